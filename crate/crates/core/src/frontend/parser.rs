//! Recursive-descent parser for rules, choice rules, aggregates and
//! `#heuristic` directives.

use super::ast::*;
use super::lexer::{tokenize, Tok, Token};
use crate::error::{Error, Result};

pub fn parse(src: &str) -> Result<Program> {
    let tokens = tokenize(src)?;
    let mut p = Parser { tokens, pos: 0 };
    let mut program = Program::default();
    while !p.at_end() {
        if p.peek() == Some(&Tok::Heuristic) {
            program.directives.push(p.directive()?);
        } else {
            program.rules.push(p.rule()?);
        }
    }
    Ok(program)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

/// Either a plain term or something that is only valid as an atom.
enum TermOrAtom {
    Term(Term),
    Atom(Atom),
}

impl Parser {
    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.tokens.get(self.pos + k).map(|t| &t.tok)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let (line, column) = match self.tokens.get(self.pos).or(self.tokens.last()) {
            Some(t) => (t.line, t.column),
            None => (1, 1),
        };
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}, found {}", self.describe())))
        }
    }

    fn describe(&self) -> String {
        match self.peek() {
            Some(t) => format!("{t:?}"),
            None => "end of input".to_string(),
        }
    }

    fn rule(&mut self) -> Result<Rule> {
        let head = match self.peek() {
            Some(Tok::Arrow) => Head::None,
            Some(Tok::LBrace) => {
                let h = self.choice_head()?;
                if matches!(self.peek(), Some(Tok::Int(_) | Tok::Var(_))) {
                    return Err(Error::UnsupportedBounds(
                        "upper bound on choice head".to_string(),
                    ));
                }
                h
            }
            Some(Tok::Int(_) | Tok::Var(_)) if self.peek_at(1) == Some(&Tok::LBrace) => {
                return Err(Error::UnsupportedBounds(
                    "lower bound on choice head".to_string(),
                ));
            }
            Some(Tok::Ident(_)) => Head::Atom(self.atom()?),
            Some(Tok::Minus) => {
                return Err(Error::Unsupported(
                    "classical negation in rule heads".to_string(),
                ))
            }
            _ => return Err(self.error(format!("expected a rule, found {}", self.describe()))),
        };
        if self.eat(&Tok::Dot) {
            if matches!(head, Head::None) {
                return Err(self.error("empty statement"));
            }
            return Ok(Rule { head, body: vec![] });
        }
        self.expect(Tok::Arrow, "`:-` or `.`")?;
        let body = if self.peek() == Some(&Tok::Dot) {
            vec![]
        } else {
            self.literals()?
        };
        self.expect(Tok::Dot, "`.` at end of rule")?;
        Ok(Rule { head, body })
    }

    fn choice_head(&mut self) -> Result<Head> {
        self.expect(Tok::LBrace, "`{`")?;
        let mut elems = Vec::new();
        if !self.eat(&Tok::RBrace) {
            loop {
                let atom = self.atom()?;
                let condition = if self.eat(&Tok::Colon) {
                    self.literals()?
                } else {
                    vec![]
                };
                elems.push(ChoiceElement { atom, condition });
                if self.eat(&Tok::Semi) {
                    continue;
                }
                self.expect(Tok::RBrace, "`}`")?;
                break;
            }
        }
        Ok(Head::Choice(elems))
    }

    fn literals(&mut self) -> Result<Vec<Literal>> {
        let mut out = vec![self.literal()?];
        while self.eat(&Tok::Comma) {
            out.push(self.literal()?);
        }
        Ok(out)
    }

    fn literal(&mut self) -> Result<Literal> {
        if self.eat(&Tok::Not) {
            if matches!(self.peek(), Some(Tok::Sum | Tok::Count)) {
                return Err(Error::Unsupported("negated aggregates".to_string()));
            }
            return Ok(Literal::Neg(self.atom()?));
        }
        if matches!(self.peek(), Some(Tok::Sum | Tok::Count)) {
            let (function, elements) = self.aggregate_body()?;
            let op = self.cmp_op().ok_or_else(|| {
                Error::UnsupportedBounds("aggregate without a lower bound".to_string())
            })?;
            let bound = self.term()?;
            let lower_bound = match op {
                CmpOp::Ge => bound,
                CmpOp::Gt => Term::binop(BinOp::Add, bound, Term::Int(1)),
                _ => {
                    return Err(Error::UnsupportedBounds(format!(
                        "aggregate relation `{}` (only lower bounds are supported)",
                        op.symbol()
                    )))
                }
            };
            return Ok(Literal::Agg(Aggregate {
                function,
                elements,
                lower_bound,
            }));
        }
        match self.term_or_atom()? {
            TermOrAtom::Atom(a) => {
                if self.cmp_op_ahead() {
                    return Err(Error::Unsupported(format!(
                        "function symbol `{}` in comparison",
                        a.predicate
                    )));
                }
                Ok(Literal::Pos(a))
            }
            TermOrAtom::Term(lhs) => {
                let Some(op) = self.cmp_op() else {
                    return match lhs {
                        Term::Sym(s) => Ok(Literal::Pos(Atom::new(&s, vec![]))),
                        _ => Err(self.error("expected a literal")),
                    };
                };
                if matches!(self.peek(), Some(Tok::Sum | Tok::Count)) {
                    let (function, elements) = self.aggregate_body()?;
                    if self.cmp_op_ahead() {
                        return Err(Error::UnsupportedBounds(
                            "aggregate with two bounds".to_string(),
                        ));
                    }
                    let lower_bound = match op {
                        CmpOp::Le => lhs,
                        CmpOp::Lt => Term::binop(BinOp::Add, lhs, Term::Int(1)),
                        _ => {
                            return Err(Error::UnsupportedBounds(format!(
                                "aggregate relation `{}` (only lower bounds are supported)",
                                op.symbol()
                            )))
                        }
                    };
                    return Ok(Literal::Agg(Aggregate {
                        function,
                        elements,
                        lower_bound,
                    }));
                }
                let rhs = self.term()?;
                Ok(Literal::Cmp(Comparison { lhs, op, rhs }))
            }
        }
    }

    fn aggregate_body(&mut self) -> Result<(AggFunction, Vec<AggElement>)> {
        let function = match self.next() {
            Some(Tok::Sum) => AggFunction::Sum,
            Some(Tok::Count) => AggFunction::Count,
            _ => unreachable!("caller checked for an aggregate keyword"),
        };
        self.expect(Tok::LBrace, "`{` after aggregate function")?;
        let mut elements = Vec::new();
        if !self.eat(&Tok::RBrace) {
            loop {
                let mut terms = vec![self.term()?];
                while self.eat(&Tok::Comma) {
                    terms.push(self.term()?);
                }
                let condition = if self.eat(&Tok::Colon) {
                    let lits = self.literals()?;
                    if lits.iter().any(|l| matches!(l, Literal::Agg(_))) {
                        return Err(Error::Unsupported("nested aggregates".to_string()));
                    }
                    lits
                } else {
                    vec![]
                };
                elements.push(AggElement { terms, condition });
                if self.eat(&Tok::Semi) {
                    continue;
                }
                self.expect(Tok::RBrace, "`}` closing aggregate")?;
                break;
            }
        }
        Ok((function, elements))
    }

    fn cmp_op_ahead(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Eq | Tok::Ne | Tok::Lt | Tok::Le | Tok::Gt | Tok::Ge)
        )
    }

    fn cmp_op(&mut self) -> Option<CmpOp> {
        let op = match self.peek()? {
            Tok::Eq => CmpOp::Eq,
            Tok::Ne => CmpOp::Ne,
            Tok::Lt => CmpOp::Lt,
            Tok::Le => CmpOp::Le,
            Tok::Gt => CmpOp::Gt,
            Tok::Ge => CmpOp::Ge,
            _ => return None,
        };
        self.pos += 1;
        Some(op)
    }

    fn atom(&mut self) -> Result<Atom> {
        match self.next() {
            Some(Tok::Ident(name)) => {
                let args = if self.peek() == Some(&Tok::LParen) {
                    self.args()?
                } else {
                    vec![]
                };
                Ok(Atom {
                    predicate: name,
                    args,
                })
            }
            _ => {
                self.pos -= 1;
                Err(self.error(format!("expected an atom, found {}", self.describe())))
            }
        }
    }

    fn args(&mut self) -> Result<Vec<Term>> {
        self.expect(Tok::LParen, "`(`")?;
        let mut args = vec![self.term()?];
        while self.eat(&Tok::Comma) {
            args.push(self.term()?);
        }
        self.expect(Tok::RParen, "`)`")?;
        Ok(args)
    }

    /// An identifier followed by `(` is an atom here; anywhere else it would be a
    /// function symbol, which the language does not have.
    fn term_or_atom(&mut self) -> Result<TermOrAtom> {
        if let (Some(Tok::Ident(_)), Some(Tok::LParen)) = (self.peek(), self.peek_at(1)) {
            return Ok(TermOrAtom::Atom(self.atom()?));
        }
        Ok(TermOrAtom::Term(self.term()?))
    }

    fn term(&mut self) -> Result<Term> {
        let lo = self.additive()?;
        if self.eat(&Tok::DotDot) {
            let hi = self.additive()?;
            return Ok(Term::Interval(Box::new(lo), Box::new(hi)));
        }
        Ok(lo)
    }

    fn additive(&mut self) -> Result<Term> {
        let mut lhs = self.multiplicative()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => BinOp::Add,
                Some(Tok::Minus) => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.multiplicative()?;
            lhs = Term::binop(op, lhs, rhs);
        }
    }

    fn multiplicative(&mut self) -> Result<Term> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Star) => BinOp::Mul,
                Some(Tok::Backslash) => BinOp::Mod,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Term::binop(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<Term> {
        if self.eat(&Tok::Minus) {
            if let Some(Tok::Int(n)) = self.peek() {
                let n = *n;
                self.pos += 1;
                return Ok(Term::Int(-n));
            }
            return Ok(Term::Neg(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Term> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(Term::Int(n)),
            Some(Tok::Var(v)) => Ok(Term::Var(v)),
            Some(Tok::Anon) => Ok(Term::Anon),
            Some(Tok::Ident(s)) => {
                if self.peek() == Some(&Tok::LParen) {
                    return Err(Error::Unsupported(format!(
                        "function symbol `{s}` (only constants, integers and variables are terms)"
                    )));
                }
                Ok(Term::Sym(s))
            }
            Some(Tok::LParen) => {
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            _ => {
                self.pos -= 1;
                Err(self.error(format!("expected a term, found {}", self.describe())))
            }
        }
    }

    fn directive(&mut self) -> Result<HeuristicDirective> {
        self.expect(Tok::Heuristic, "`#heuristic`")?;
        let head = self.heuristic_atom()?;
        let mut condition = Vec::new();
        if self.eat(&Tok::Colon) {
            loop {
                condition.push(self.condition_literal()?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        self.expect(Tok::Dot, "`.` after heuristic condition")?;
        let (mut weight, mut level) = (Term::Int(0), Term::Int(0));
        if self.eat(&Tok::LBracket) {
            if self.peek() != Some(&Tok::At) && self.peek() != Some(&Tok::RBracket) {
                weight = self.term()?;
            }
            if self.eat(&Tok::At) {
                level = self.term()?;
            }
            if self.peek() == Some(&Tok::Comma) {
                return Err(Error::Unsupported(
                    "heuristic modifiers in annotations (use signs instead)".to_string(),
                ));
            }
            self.expect(Tok::RBracket, "`]` closing annotation")?;
        }
        Ok(HeuristicDirective {
            head,
            condition,
            weight,
            level,
        })
    }

    fn heuristic_atom(&mut self) -> Result<HeuristicAtom> {
        let sign = if self.eat(&Tok::Plus) {
            Sign::Plus
        } else if self.eat(&Tok::Minus) {
            Sign::Minus
        } else {
            Sign::Empty
        };
        Ok(HeuristicAtom::new(sign, self.atom()?))
    }

    fn condition_literal(&mut self) -> Result<ConditionLiteral> {
        if self.eat(&Tok::Not) {
            return Ok(ConditionLiteral::Neg(self.heuristic_atom()?));
        }
        if matches!(self.peek(), Some(Tok::Plus))
            || (matches!(self.peek(), Some(Tok::Minus))
                && matches!(self.peek_at(1), Some(Tok::Ident(_))))
        {
            return Ok(ConditionLiteral::Pos(self.heuristic_atom()?));
        }
        if matches!(self.peek(), Some(Tok::Sum | Tok::Count)) {
            return Err(Error::Unsupported(
                "aggregates in heuristic conditions".to_string(),
            ));
        }
        match self.term_or_atom()? {
            TermOrAtom::Atom(a) => Ok(ConditionLiteral::Pos(HeuristicAtom::new(Sign::Empty, a))),
            TermOrAtom::Term(lhs) => match self.cmp_op() {
                Some(op) => {
                    if matches!(self.peek(), Some(Tok::Sum | Tok::Count)) {
                        return Err(Error::Unsupported(
                            "aggregates in heuristic conditions".to_string(),
                        ));
                    }
                    let rhs = self.term()?;
                    Ok(ConditionLiteral::Cmp(Comparison { lhs, op, rhs }))
                }
                None => match lhs {
                    Term::Sym(s) => Ok(ConditionLiteral::Pos(HeuristicAtom::new(
                        Sign::Empty,
                        Atom::new(&s, vec![]),
                    ))),
                    _ => Err(self.error("expected a condition literal")),
                },
            },
        }
    }
}
