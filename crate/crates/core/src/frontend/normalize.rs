//! Program normalization: interval facts are expanded, choice heads are
//! compiled into complement-atom rule pairs, anonymous variables are renamed,
//! and every rule and directive is checked for safety.

use std::collections::BTreeSet;

use super::ast::*;
use crate::error::{Error, Result};
use crate::ground::builtin::{eval_term_values, Substitution};
use crate::ground::value::Value;

/// Prefix of the complement predicate introduced for each choice atom.
pub const COMPLEMENT_PREFIX: &str = "_co_";

pub fn complement_atom(atom: &Atom) -> Atom {
    Atom {
        predicate: format!("{COMPLEMENT_PREFIX}{}", atom.predicate),
        args: atom.args.clone(),
    }
}

pub fn normalize(p: &Program) -> Result<Program> {
    let mut out = Program::default();
    for rule in &p.rules {
        if rule.is_fact() {
            expand_fact(rule, &mut out.rules)?;
            continue;
        }
        let rule = rename_anonymous(rule)?;
        match &rule.head {
            Head::Choice(elems) => {
                for e in elems {
                    if e.atom.has_interval() {
                        return Err(Error::Unsupported(format!(
                            "interval in choice element `{}`",
                            e.atom
                        )));
                    }
                    let co = complement_atom(&e.atom);
                    let mut body = rule.body.clone();
                    body.extend(e.condition.iter().cloned());
                    let mut b1 = body.clone();
                    b1.push(Literal::Neg(co.clone()));
                    let mut b2 = body;
                    b2.push(Literal::Neg(e.atom.clone()));
                    out.rules.push(Rule {
                        head: Head::Atom(e.atom.clone()),
                        body: b1,
                    });
                    out.rules.push(Rule {
                        head: Head::Atom(co),
                        body: b2,
                    });
                }
            }
            _ => out.rules.push(rule),
        }
    }
    for r in &out.rules {
        check_rule_safety(r)?;
    }
    for d in &p.directives {
        let d = rename_anonymous_directive(d)?;
        check_directive_safety(&d)?;
        out.directives.push(d);
    }
    Ok(out)
}

fn expand_fact(rule: &Rule, out: &mut Vec<Rule>) -> Result<()> {
    let Head::Atom(atom) = &rule.head else {
        unreachable!("facts have atom heads")
    };
    if let Some(v) = atom.vars().into_iter().next() {
        return Err(Error::Unsafe {
            variable: v,
            statement: rule.to_string(),
        });
    }
    if atom.has_anon() {
        return Err(Error::Unsafe {
            variable: "_".to_string(),
            statement: rule.to_string(),
        });
    }
    let sigma = Substitution::new();
    let mut combos: Vec<Vec<Term>> = vec![vec![]];
    for arg in &atom.args {
        let vals = eval_term_values(arg, &sigma)?;
        if vals.is_empty() {
            log::warn!("E_BAD_INTERVAL: `{rule}` denotes no facts");
        }
        combos = combos
            .into_iter()
            .flat_map(|prefix| {
                vals.iter().map(move |v| {
                    let mut next = prefix.clone();
                    next.push(value_to_term(v));
                    next
                })
            })
            .collect();
    }
    for args in combos {
        out.push(Rule {
            head: Head::Atom(Atom {
                predicate: atom.predicate.clone(),
                args,
            }),
            body: vec![],
        });
    }
    Ok(())
}

fn value_to_term(v: &Value) -> Term {
    match v {
        Value::Int(i) => Term::Int(*i),
        Value::Sym(s) => Term::Sym(s.to_string()),
    }
}

struct Renamer {
    next: usize,
}

impl Renamer {
    fn fresh(&mut self) -> Term {
        let t = Term::Var(format!("_A{}", self.next));
        self.next += 1;
        t
    }

    fn term(&mut self, t: &Term) -> Term {
        match t {
            Term::Anon => self.fresh(),
            other => other.clone(),
        }
    }

    fn atom(&mut self, a: &Atom) -> Atom {
        Atom {
            predicate: a.predicate.clone(),
            args: a.args.iter().map(|t| self.term(t)).collect(),
        }
    }

    /// Renames `_` in positive atoms; anywhere else it is unsafe.
    fn literal(&mut self, l: &Literal, stmt: &dyn Fn() -> String) -> Result<Literal> {
        Ok(match l {
            Literal::Pos(a) => Literal::Pos(self.atom(a)),
            Literal::Agg(agg) => {
                let mut elements = Vec::new();
                for e in &agg.elements {
                    if e.terms.iter().any(Term::has_anon) {
                        return Err(anon_unsafe(stmt()));
                    }
                    let condition = e
                        .condition
                        .iter()
                        .map(|c| self.literal(c, stmt))
                        .collect::<Result<_>>()?;
                    elements.push(AggElement {
                        terms: e.terms.clone(),
                        condition,
                    });
                }
                if agg.lower_bound.has_anon() {
                    return Err(anon_unsafe(stmt()));
                }
                Literal::Agg(Aggregate {
                    function: agg.function,
                    elements,
                    lower_bound: agg.lower_bound.clone(),
                })
            }
            Literal::Neg(a) => {
                if a.has_anon() {
                    return Err(anon_unsafe(stmt()));
                }
                l.clone()
            }
            Literal::Cmp(c) => {
                if c.lhs.has_anon() || c.rhs.has_anon() {
                    return Err(anon_unsafe(stmt()));
                }
                l.clone()
            }
        })
    }
}

fn anon_unsafe(statement: String) -> Error {
    Error::Unsafe {
        variable: "_".to_string(),
        statement,
    }
}

fn rename_anonymous(rule: &Rule) -> Result<Rule> {
    let mut r = Renamer { next: 0 };
    let stmt = || rule.to_string();
    let head = match &rule.head {
        Head::Atom(a) => {
            if a.has_anon() {
                return Err(anon_unsafe(stmt()));
            }
            Head::Atom(a.clone())
        }
        Head::Choice(elems) => {
            let mut out = Vec::new();
            for e in elems {
                if e.atom.has_anon() {
                    return Err(anon_unsafe(stmt()));
                }
                let condition = e
                    .condition
                    .iter()
                    .map(|c| r.literal(c, &stmt))
                    .collect::<Result<_>>()?;
                out.push(ChoiceElement {
                    atom: e.atom.clone(),
                    condition,
                });
            }
            Head::Choice(out)
        }
        Head::None => Head::None,
    };
    let body = rule
        .body
        .iter()
        .map(|l| r.literal(l, &stmt))
        .collect::<Result<_>>()?;
    Ok(Rule { head, body })
}

/// `_` in a positive condition becomes a fresh variable; under `not` it stays
/// as a projected wildcard.
fn rename_anonymous_directive(d: &HeuristicDirective) -> Result<HeuristicDirective> {
    let mut r = Renamer { next: 0 };
    if d.head.atom.has_anon() || d.weight.has_anon() || d.level.has_anon() {
        return Err(anon_unsafe(d.to_string()));
    }
    let mut condition = Vec::new();
    for c in &d.condition {
        condition.push(match c {
            ConditionLiteral::Pos(h) => {
                ConditionLiteral::Pos(HeuristicAtom::new(h.sign, r.atom(&h.atom)))
            }
            ConditionLiteral::Cmp(cmp) if cmp.lhs.has_anon() || cmp.rhs.has_anon() => {
                return Err(anon_unsafe(d.to_string()))
            }
            other => other.clone(),
        });
    }
    Ok(HeuristicDirective {
        head: d.head.clone(),
        condition,
        weight: d.weight.clone(),
        level: d.level.clone(),
    })
}

fn require(
    needed: &BTreeSet<String>,
    bound: &BTreeSet<String>,
    statement: &dyn Fn() -> String,
) -> Result<()> {
    match needed.difference(bound).next() {
        Some(v) => Err(Error::Unsafe {
            variable: v.clone(),
            statement: statement(),
        }),
        None => Ok(()),
    }
}

pub fn check_rule_safety(rule: &Rule) -> Result<()> {
    let stmt = || rule.to_string();
    let mut bound = BTreeSet::new();
    for l in &rule.body {
        if let Literal::Pos(a) = l {
            if a.has_interval() {
                return Err(Error::Unsupported(format!("interval in body atom `{a}`")));
            }
            a.binding_vars(&mut bound);
        }
    }
    let mut needed = BTreeSet::new();
    match &rule.head {
        Head::Atom(a) => a.collect_vars(&mut needed),
        Head::Choice(elems) => {
            for e in elems {
                e.atom.collect_vars(&mut needed);
            }
        }
        Head::None => {}
    }
    for l in &rule.body {
        match l {
            Literal::Pos(a) => a.collect_vars(&mut needed),
            Literal::Neg(a) => {
                if a.has_interval() {
                    return Err(Error::Unsupported(format!("interval in body atom `{a}`")));
                }
                a.collect_vars(&mut needed)
            }
            Literal::Cmp(c) => c.collect_vars(&mut needed),
            Literal::Agg(agg) => {
                agg.lower_bound.collect_vars(&mut needed);
                for e in &agg.elements {
                    let mut local_bound = bound.clone();
                    for c in &e.condition {
                        if let Literal::Pos(a) = c {
                            a.binding_vars(&mut local_bound);
                        }
                    }
                    let mut local_needed = BTreeSet::new();
                    for t in &e.terms {
                        t.collect_vars(&mut local_needed);
                    }
                    for c in &e.condition {
                        match c {
                            Literal::Pos(a) | Literal::Neg(a) => a.collect_vars(&mut local_needed),
                            Literal::Cmp(cmp) => cmp.collect_vars(&mut local_needed),
                            Literal::Agg(_) => {
                                return Err(Error::Unsupported("nested aggregates".to_string()))
                            }
                        }
                    }
                    require(&local_needed, &local_bound, &stmt)?;
                }
            }
        }
    }
    require(&needed, &bound, &stmt)
}

pub fn check_directive_safety(d: &HeuristicDirective) -> Result<()> {
    let stmt = || d.to_string();
    let mut bound = BTreeSet::new();
    for h in d.positive_condition() {
        h.atom.binding_vars(&mut bound);
    }
    let mut needed = BTreeSet::new();
    d.head.atom.collect_vars(&mut needed);
    d.weight.collect_vars(&mut needed);
    d.level.collect_vars(&mut needed);
    for c in &d.condition {
        match c {
            ConditionLiteral::Pos(h) | ConditionLiteral::Neg(h) => {
                if h.atom.has_interval() {
                    return Err(Error::Unsupported(format!(
                        "interval in heuristic condition `{}`",
                        h.atom
                    )));
                }
                h.atom.collect_vars(&mut needed)
            }
            ConditionLiteral::Cmp(cmp) => cmp.collect_vars(&mut needed),
        }
    }
    require(&needed, &bound, &stmt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse;

    fn norm(s: &str) -> Result<Program> {
        normalize(&parse(s)?)
    }

    #[test]
    fn interval_fact_expands() {
        let p = norm("bin(1..3).").unwrap();
        let facts: Vec<_> = p.rules.iter().map(|r| r.to_string()).collect();
        assert_eq!(facts, vec!["bin(1).", "bin(2).", "bin(3)."]);
    }

    #[test]
    fn empty_interval_yields_no_facts() {
        assert!(norm("bin(3..1).").unwrap().rules.is_empty());
    }

    #[test]
    fn choice_compiles_to_complement_pair() {
        let p = norm("{a(X) : x(X)}.").unwrap();
        let rules: Vec<_> = p.rules.iter().map(|r| r.to_string()).collect();
        assert_eq!(
            rules,
            vec!["a(X) :- x(X), not _co_a(X).", "_co_a(X) :- x(X), not a(X)."]
        );
    }

    #[test]
    fn unsafe_directive_names_variable() {
        match norm("#heuristic a(X) : not b(X).") {
            Err(Error::Unsafe { variable, .. }) => assert_eq!(variable, "X"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unsafe_rule_detected() {
        assert_eq!(norm("p(X) :- not q(X).").unwrap_err().code(), "E_UNSAFE");
        assert_eq!(norm("p :- q(X), Y > X.").unwrap_err().code(), "E_UNSAFE");
        assert_eq!(norm("p(X).").unwrap_err().code(), "E_UNSAFE");
        assert_eq!(norm("p(X) :- q(X+1).").unwrap_err().code(), "E_UNSAFE");
    }

    #[test]
    fn anonymous_variables() {
        let p = norm("placed(I) :- in(I,_). #heuristic a(I) : item(I), not in(I,_).").unwrap();
        assert_eq!(p.rules[0].to_string(), "placed(I) :- in(I,_A0).");
        assert_eq!(
            p.directives[0].to_string(),
            "#heuristic a(I) : item(I), not in(I,_). [0@0]"
        );
        assert_eq!(norm("p :- q, not r(_).").unwrap_err().code(), "E_UNSAFE");
    }

    #[test]
    fn aggregate_element_safety() {
        assert!(norm("f(B) :- bin(B), 3 <= #sum { S,I : in(I,B), size(I,S) }.").is_ok());
        assert_eq!(
            norm("f(B) :- bin(B), 3 <= #sum { S : in(I,B) }.")
                .unwrap_err()
                .code(),
            "E_UNSAFE"
        );
    }

    #[test]
    fn idempotent_on_example() {
        let p = norm(
            "x(1..2). {a(X) : x(X)}. b(X) :- x(X), not c(X). \
                      c(X) :- x(X), not b(X). #heuristic b(X) : x(X), not a(X). [X@2]",
        )
        .unwrap();
        assert_eq!(normalize(&p).unwrap(), p);
    }
}
