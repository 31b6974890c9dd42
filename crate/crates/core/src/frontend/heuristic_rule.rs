//! Translation of `#heuristic` directives into rules with a built-in `_h` head.

use std::fmt;

use super::ast::*;

/// Name of the built-in head predicate of heuristic rules.
pub const HEURISTIC_PREDICATE: &str = "_h";

/// `_h(atm(head), w, l, true|false) :- condition`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeuristicRule {
    pub head_atom: Atom,
    pub weight: Term,
    pub level: Term,
    /// `true` for heads signed `+` or unsigned, `false` for `-`.
    pub polarity: bool,
    pub body: Vec<ConditionLiteral>,
}

impl HeuristicRule {
    /// Atoms that must be known before an instance is grounded.
    pub fn grounding_key(&self) -> Vec<&Atom> {
        self.body
            .iter()
            .filter_map(|c| match c {
                ConditionLiteral::Pos(h) => Some(h.atm()),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for HeuristicRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{HEURISTIC_PREDICATE}({}, {}, {}, {})",
            self.head_atom, self.weight, self.level, self.polarity
        )?;
        if !self.body.is_empty() {
            write!(f, " :- ")?;
            write_list(f, &self.body, ", ")?;
        }
        write!(f, ".")
    }
}

pub fn directive_to_heuristic_rule(d: &HeuristicDirective) -> HeuristicRule {
    HeuristicRule {
        head_atom: d.head.atm().clone(),
        weight: d.weight.clone(),
        level: d.level.clone(),
        polarity: d.head.sign.head_polarity(),
        body: d.condition.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse;

    fn rule(src: &str) -> HeuristicRule {
        directive_to_heuristic_rule(&parse(src).unwrap().directives[0])
    }

    #[test]
    fn example_five_directive() {
        let r = rule("#heuristic b(X) : x(X), not a(X). [X@2]");
        assert_eq!(r.to_string(), "_h(b(X), X, 2, true) :- x(X), not a(X).");
        let key: Vec<_> = r.grounding_key().iter().map(|a| a.to_string()).collect();
        assert_eq!(key, vec!["x(X)"]);
    }

    #[test]
    fn defaults_and_empty_body() {
        assert_eq!(
            rule("#heuristic a(5). [1]").to_string(),
            "_h(a(5), 1, 0, true)."
        );
    }

    #[test]
    fn negative_head() {
        let r = rule("#heuristic -a(5) : a(4). [2]");
        assert_eq!(r.to_string(), "_h(a(5), 2, 0, false) :- a(4).");
    }

    #[test]
    fn signs_survive_in_key_atoms() {
        let r = rule("#heuristic a(6) : -a(5), +a(4). [2]");
        let key: Vec<_> = r.grounding_key().iter().map(|a| a.to_string()).collect();
        assert_eq!(key, vec!["a(5)", "a(4)"]);
        assert_eq!(r.body[0].to_string(), "-a(5)");
    }
}
