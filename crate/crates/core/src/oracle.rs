//! Brute-force answer-set enumeration over the full grounding, used as the
//! reference the solver is tested against.
//!
//! A candidate M is an answer set iff it is a model and no proper subset of
//! M is a model of the FLP reduct (the rules whose body M satisfies). With
//! monotone aggregates that reduct has a least model inside M, so minimality
//! is decided by comparing M with that least model; the literal subset
//! enumeration is kept for cross-checking on small models.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::frontend::ast::Program;
use crate::ground::{full_grounding, AggRole, AtomId, Grounder, DEFAULT_CAP};
use crate::solver::AnswerSet;

/// Most atoms the oracle will branch on.
pub const ORACLE_ATOM_CAP: usize = 24;

/// Largest model whose subsets are enumerated by [`is_answer_set_by_subsets`].
pub const SUBSET_CHECK_CAP: usize = 20;

/// Answer sets of `p`, internal atoms projected away, sorted.
pub fn enumerate_answer_sets(p: &Program) -> Result<Vec<AnswerSet>> {
    let g = full_grounding(p, DEFAULT_CAP)?;
    Ok(answer_sets(&g)?.iter().map(|m| project(&g, m)).collect())
}

/// Interpretations over atom ids: `m[a]` holds for non-node atoms; node
/// atoms are evaluated from their aggregate group.
pub type Interpretation = Vec<bool>;

pub fn project(g: &Grounder, m: &Interpretation) -> AnswerSet {
    let store = g.store();
    AnswerSet::new(
        (0..store.len())
            .map(|i| AtomId(i as u32))
            .filter(|&x| holds(g, m, x) && !store.is_internal(x))
            .map(|x| store.display(x))
            .collect(),
    )
}

/// Truth of `x` in `m`, computing aggregate node atoms.
pub fn holds(g: &Grounder, m: &Interpretation, x: AtomId) -> bool {
    match g.role(x) {
        Some(AggRole::Node(gi)) => {
            let group = &g.groups()[gi];
            let k = group
                .nodes
                .iter()
                .find(|(n, _)| *n == x)
                .map(|(_, k)| *k)
                .expect("node in its group");
            let sum: i64 = group
                .elements
                .iter()
                .filter(|(e, _)| m[e.index()])
                .map(|(_, w)| *w)
                .sum();
            sum >= k
        }
        _ => m[x.index()],
    }
}

fn body_holds(g: &Grounder, m: &Interpretation, pos: &[AtomId], neg: &[AtomId]) -> bool {
    pos.iter().all(|&p| holds(g, m, p)) && !neg.iter().any(|&n| holds(g, m, n))
}

/// Every rule and constraint is satisfied by `m`.
pub fn is_model(g: &Grounder, m: &Interpretation) -> bool {
    g.facts().iter().all(|f| m[f.index()])
        && g.rules()
            .iter()
            .all(|r| !body_holds(g, m, &r.pos, &r.neg) || r.head.is_some_and(|h| holds(g, m, h)))
}

/// Least model of the FLP reduct of `m`, built bottom-up inside `m`.
fn reduct_least_model(g: &Grounder, m: &Interpretation) -> Interpretation {
    let reduct: Vec<_> = g
        .rules()
        .iter()
        .filter(|r| r.head.is_some() && body_holds(g, m, &r.pos, &r.neg))
        .collect();
    let mut t = vec![false; m.len()];
    for f in g.facts() {
        t[f.index()] = true;
    }
    let mut changed = true;
    while changed {
        changed = false;
        for r in &reduct {
            let h = r.head.expect("filtered");
            if !t[h.index()] && r.pos.iter().all(|&p| holds(g, &t, p)) {
                t[h.index()] = true;
                changed = true;
            }
        }
    }
    t
}

/// FLP answer-set test using the least model of the reduct.
pub fn is_answer_set(g: &Grounder, m: &Interpretation) -> bool {
    is_model(g, m) && reduct_least_model(g, m) == *m
}

/// FLP answer-set test by enumerating every subset of `m`. `None` when `m`
/// has more than [`SUBSET_CHECK_CAP`] atoms beyond the facts.
pub fn is_answer_set_by_subsets(g: &Grounder, m: &Interpretation) -> Option<bool> {
    if !is_model(g, m) {
        return Some(false);
    }
    let facts: BTreeSet<usize> = g.facts().iter().map(|f| f.index()).collect();
    let free: Vec<usize> = (0..m.len())
        .filter(|&i| m[i] && !facts.contains(&i))
        .collect();
    if free.len() > SUBSET_CHECK_CAP {
        return None;
    }
    let reduct: Vec<_> = g
        .rules()
        .iter()
        .filter(|r| body_holds(g, m, &r.pos, &r.neg))
        .collect();
    let full = (1u64 << free.len()) - 1;
    for mask in 0..full {
        let mut n = vec![false; m.len()];
        for &f in &facts {
            n[f] = true;
        }
        for (bit, &i) in free.iter().enumerate() {
            n[i] = mask >> bit & 1 == 1;
        }
        let model = reduct
            .iter()
            .all(|r| !body_holds(g, &n, &r.pos, &r.neg) || r.head.is_some_and(|h| holds(g, &n, h)));
        if model {
            return Some(false);
        }
    }
    Some(true)
}

/// Gelfond-Lifschitz test; `None` for programs with aggregates.
pub fn is_answer_set_gl(g: &Grounder, m: &Interpretation) -> Option<bool> {
    if !g.groups().is_empty() {
        return None;
    }
    let mut t = vec![false; m.len()];
    for f in g.facts() {
        t[f.index()] = true;
    }
    let reduct: Vec<_> = g
        .rules()
        .iter()
        .filter(|r| !r.neg.iter().any(|n| m[n.index()]))
        .collect();
    let mut changed = true;
    while changed {
        changed = false;
        for r in &reduct {
            if r.pos.iter().all(|p| t[p.index()]) {
                match r.head {
                    Some(h) if !t[h.index()] => {
                        t[h.index()] = true;
                        changed = true;
                    }
                    Some(_) => {}
                    None => return Some(false),
                }
            }
        }
    }
    Some(t == *m)
}

/// Atoms the search branches on: rule heads that are not facts.
fn candidates(g: &Grounder) -> Vec<AtomId> {
    let facts: BTreeSet<AtomId> = g.facts().iter().copied().collect();
    let heads: BTreeSet<AtomId> = g
        .rules()
        .iter()
        .filter_map(|r| r.head)
        .filter(|h| !facts.contains(h))
        .collect();
    heads.into_iter().collect()
}

/// All answer sets of the fully ground program.
pub fn answer_sets(g: &Grounder) -> Result<Vec<Interpretation>> {
    let cands = candidates(g);
    if cands.len() > ORACLE_ATOM_CAP {
        return Err(Error::TooLarge(format!(
            "oracle limited to {ORACLE_ATOM_CAP} atoms, program has {}",
            cands.len()
        )));
    }
    let n = g.store().len();
    let mut position = vec![None; n];
    for (i, c) in cands.iter().enumerate() {
        position[c.index()] = Some(i);
    }
    // A rule can be evaluated once every atom it mentions is decided.
    let ready_at = |x: AtomId| -> Option<usize> {
        match g.role(x) {
            Some(AggRole::Node(gi)) => g.groups()[gi]
                .elements
                .iter()
                .filter_map(|(e, _)| position[e.index()])
                .max(),
            _ => position[x.index()],
        }
    };
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); cands.len() + 1];
    for (ri, r) in g.rules().iter().enumerate() {
        let last = r
            .pos
            .iter()
            .chain(&r.neg)
            .chain(&r.head)
            .filter_map(|&x| ready_at(x))
            .max();
        checks[last.map_or(0, |l| l + 1)].push(ri);
    }
    let mut m = vec![false; n];
    for f in g.facts() {
        m[f.index()] = true;
    }
    let mut out = Vec::new();
    search(g, &cands, &checks, 0, &mut m, &mut out);
    Ok(out)
}

fn search(
    g: &Grounder,
    cands: &[AtomId],
    checks: &[Vec<usize>],
    depth: usize,
    m: &mut Interpretation,
    out: &mut Vec<Interpretation>,
) {
    let violated = checks[depth].iter().any(|&ri| {
        let r = g.rule(ri);
        body_holds(g, m, &r.pos, &r.neg) && !r.head.is_some_and(|h| holds(g, m, h))
    });
    if violated {
        return;
    }
    if depth == cands.len() {
        if reduct_least_model(g, m) == *m {
            out.push(m.clone());
        }
        return;
    }
    let x = cands[depth].index();
    for v in [false, true] {
        m[x] = v;
        search(g, cands, checks, depth + 1, m, out);
    }
    m[x] = false;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::load;

    fn sets(src: &str) -> Vec<String> {
        let mut v: Vec<String> = enumerate_answer_sets(&load(src).unwrap())
            .unwrap()
            .iter()
            .map(|m| m.to_string())
            .collect();
        v.sort();
        v
    }

    #[test]
    fn two_stable_models() {
        assert_eq!(sets("b :- not c. c :- not b."), vec!["{b}", "{c}"]);
    }

    #[test]
    fn odd_loop_and_unfounded_loop() {
        assert!(sets("a :- not a.").is_empty());
        assert_eq!(sets("a :- b. b :- a."), vec!["{}"]);
    }

    #[test]
    fn choice_with_constraint() {
        assert_eq!(sets("{a;b}. :- a, b."), vec!["{a}", "{b}", "{}"]);
    }

    #[test]
    fn aggregate_support_is_not_circular() {
        // p(1) cannot support itself through the count.
        assert_eq!(sets("p(1) :- 1 <= #count { X : p(X) }."), vec!["{}"]);
        assert_eq!(
            sets("q(1). p(2) :- 1 <= #count { X : q(X) }."),
            vec!["{p(2), q(1)}"]
        );
    }

    #[test]
    fn checks_agree_on_every_interpretation() {
        for src in [
            "b :- not c. c :- not b. d :- b.",
            "a :- not b. b :- not a. c :- a. c :- b. :- not c.",
            "a :- b. b :- a. c :- not a.",
        ] {
            let g = full_grounding(&load(src).unwrap(), DEFAULT_CAP).unwrap();
            let n = g.store().len();
            let bodies: Vec<usize> = (0..n)
                .filter(|&i| g.is_body_atom(AtomId(i as u32)))
                .collect();
            for mask in 0u32..(1 << n) {
                let m: Interpretation = (0..n).map(|i| mask >> i & 1 == 1).collect();
                if bodies.iter().any(|&b| m[b]) {
                    continue;
                }
                let flp = is_answer_set(&g, &m);
                assert_eq!(
                    Some(flp),
                    is_answer_set_by_subsets(&g, &m),
                    "{src} {mask:b}"
                );
                assert_eq!(Some(flp), is_answer_set_gl(&g, &m), "{src} {mask:b}");
            }
        }
    }

    #[test]
    fn too_many_atoms() {
        let err = enumerate_answer_sets(&load("n(1..13). {p(X) : n(X)}.").unwrap()).unwrap_err();
        assert_eq!(err.code(), "E_TOO_LARGE");
    }
}
