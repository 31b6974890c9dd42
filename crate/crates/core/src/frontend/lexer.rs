use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Var(String),
    Anon,
    Int(i64),
    Not,
    Heuristic,
    Sum,
    Count,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    Dot,
    DotDot,
    At,
    Plus,
    Minus,
    Star,
    Backslash,
    Arrow,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);

    let err = |line, column, message: String| Error::Syntax {
        line,
        column,
        message,
    };

    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let advance = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut i, &mut col);
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let peek = chars.get(i + 1).copied();
        let mut push = |tok| {
            out.push(Token {
                tok,
                line: tl,
                column: tc,
            })
        };

        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            col += i - start;
            let n = text
                .parse::<i64>()
                .map_err(|_| err(tl, tc, format!("integer literal `{text}` out of range")))?;
            push(Tok::Int(n));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            col += i - start;
            let tok = if text == "_" {
                Tok::Anon
            } else if text.starts_with('_') {
                return Err(err(
                    tl,
                    tc,
                    format!("identifier `{text}`: names starting with `_` are reserved"),
                ));
            } else if text == "not" {
                Tok::Not
            } else if c.is_uppercase() {
                Tok::Var(text)
            } else {
                Tok::Ident(text)
            };
            push(tok);
            continue;
        }
        if c == '#' {
            let start = i + 1;
            let mut j = start;
            while j < chars.len() && chars[j].is_alphabetic() {
                j += 1;
            }
            let word: String = chars[start..j].iter().collect();
            let tok = match word.as_str() {
                "heuristic" => Tok::Heuristic,
                "sum" => Tok::Sum,
                "count" => Tok::Count,
                "min" | "max" => {
                    return Err(Error::Unsupported(format!(
                        "#{word} aggregates ({tl}:{tc})"
                    )))
                }
                _ => return Err(err(tl, tc, format!("unknown directive `#{word}`"))),
            };
            col += j - i;
            i = j;
            push(tok);
            continue;
        }
        let (tok, len) = match (c, peek) {
            (':', Some('-')) => (Tok::Arrow, 2),
            ('.', Some('.')) => (Tok::DotDot, 2),
            ('!', Some('=')) => (Tok::Ne, 2),
            ('<', Some('>')) => (Tok::Ne, 2),
            ('<', Some('=')) => (Tok::Le, 2),
            ('>', Some('=')) => (Tok::Ge, 2),
            ('=', Some('=')) => (Tok::Eq, 2),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            ('{', _) => (Tok::LBrace, 1),
            ('}', _) => (Tok::RBrace, 1),
            ('[', _) => (Tok::LBracket, 1),
            (']', _) => (Tok::RBracket, 1),
            (',', _) => (Tok::Comma, 1),
            (';', _) => (Tok::Semi, 1),
            (':', _) => (Tok::Colon, 1),
            ('.', _) => (Tok::Dot, 1),
            ('@', _) => (Tok::At, 1),
            ('+', _) => (Tok::Plus, 1),
            ('-', _) | ('−', _) => (Tok::Minus, 1),
            ('*', _) => (Tok::Star, 1),
            ('\\', _) => (Tok::Backslash, 1),
            ('←', _) => (Tok::Arrow, 1),
            ('=', _) => (Tok::Eq, 1),
            ('<', _) => (Tok::Lt, 1),
            ('>', _) => (Tok::Gt, 1),
            ('≤', _) => (Tok::Le, 1),
            ('≥', _) => (Tok::Ge, 1),
            ('≠', _) => (Tok::Ne, 1),
            _ => return Err(err(tl, tc, format!("unexpected character `{c}`"))),
        };
        push(tok);
        advance(len, &mut i, &mut col);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn interval_and_terminator() {
        assert_eq!(
            toks("bin(1..3)."),
            vec![
                Tok::Ident("bin".into()),
                Tok::LParen,
                Tok::Int(1),
                Tok::DotDot,
                Tok::Int(3),
                Tok::RParen,
                Tok::Dot
            ]
        );
    }

    #[test]
    fn unicode_operators() {
        assert_eq!(
            toks("← ≤ ≥ ≠ −"),
            vec![Tok::Arrow, Tok::Le, Tok::Ge, Tok::Ne, Tok::Minus]
        );
    }

    #[test]
    fn comments_and_positions() {
        let t = tokenize("% c\n  a.").unwrap();
        assert_eq!((t[0].line, t[0].column), (2, 3));
    }

    #[test]
    fn reserved_prefix_rejected() {
        assert!(matches!(tokenize("_h(a)."), Err(Error::Syntax { .. })));
    }
}
