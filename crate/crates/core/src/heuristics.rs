//! Satisfaction of heuristic conditions over partial assignments, directive
//! applicability, priority selection, and the mapping from a chosen head to
//! a choice point.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::assignment::{PartialAssignment, TruthValue};
use crate::frontend::ast::Sign;
use crate::ground::{AtomId, GroundHeuristicDirective, Grounder, NegCondition};

/// Whether the signed literal `s a` holds for an atom with value `v`.
pub fn satisfies(v: Option<TruthValue>, sign: Sign) -> bool {
    use TruthValue::*;
    match sign {
        Sign::Empty => matches!(v, Some(M | T)),
        Sign::Plus => v == Some(T),
        Sign::Minus => v == Some(F),
    }
}

/// A literal of a heuristic condition: `s a` or `not s a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HeuristicLiteral {
    pub negated: bool,
    pub sign: Sign,
}

pub fn satisfies_literal(v: Option<TruthValue>, lit: HeuristicLiteral) -> bool {
    satisfies(v, lit.sign) != lit.negated
}

/// True when some atom covered by `n` is in A± with the condition's sign.
pub fn neg_condition_hit(a: &PartialAssignment, g: &Grounder, n: &NegCondition) -> bool {
    let store = g.store();
    if n.is_pattern() {
        store
            .atoms_of(n.atom.pred)
            .iter()
            .any(|&x| satisfies(a.value(x), n.sign) && n.matches(store.atom(x)))
    } else {
        store
            .get(&n.atom)
            .is_some_and(|x| satisfies(a.value(x), n.sign))
    }
}

/// c+(d) ⊆ A± and c−(d) ∩ A± = ∅, evaluated literal by literal.
pub fn condition_satisfied(
    a: &PartialAssignment,
    g: &Grounder,
    d: &GroundHeuristicDirective,
) -> bool {
    d.pos.iter().all(|&(s, x)| satisfies(a.value(x), s))
        && !d.neg.iter().any(|n| neg_condition_hit(a, g, n))
}

/// The same test phrased over the explicit signed set A±.
pub fn condition_satisfied_by_projection(
    a: &PartialAssignment,
    g: &Grounder,
    d: &GroundHeuristicDirective,
) -> bool {
    let set = a.project().to_set();
    let store = g.store();
    d.pos.iter().all(|p| set.contains(p))
        && !set.iter().any(|&(s, x)| {
            d.neg
                .iter()
                .any(|n| n.sign == s && n.matches(store.atom(x)))
        })
}

/// Condition satisfied and head neither T nor F.
pub fn is_applicable(a: &PartialAssignment, g: &Grounder, d: &GroundHeuristicDirective) -> bool {
    !matches!(a.value(d.head), Some(TruthValue::T | TruthValue::F)) && condition_satisfied(a, g, d)
}

/// Reference maxpriority: highest level first, then highest weight.
pub fn maxpriority<'a>(ds: &[&'a GroundHeuristicDirective]) -> Vec<&'a GroundHeuristicDirective> {
    let Some(level) = ds.iter().map(|d| d.level).max() else {
        return Vec::new();
    };
    let at_level: Vec<_> = ds.iter().copied().filter(|d| d.level == level).collect();
    let weight = at_level.iter().map(|d| d.weight).max().expect("non-empty");
    at_level
        .into_iter()
        .filter(|d| d.weight == weight)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DecisionError {
    #[error("E_NO_DERIVING_RULE: no applicable rule derives the heuristic head")]
    NoDerivingRule,
    #[error("E_AMBIGUOUS_NEGATIVE: a negative heuristic head has several deriving rules")]
    AmbiguousNegative,
}

impl DecisionError {
    pub fn code(&self) -> &'static str {
        match self {
            DecisionError::NoDerivingRule => "E_NO_DERIVING_RULE",
            DecisionError::AmbiguousNegative => "E_AMBIGUOUS_NEGATIVE",
        }
    }
}

/// B+(r) ⊆ A± and B−(r) ∩ A± = ∅.
pub fn rule_applicable(a: &PartialAssignment, g: &Grounder, rule: usize) -> bool {
    let r = g.rule(rule);
    r.pos.iter().all(|&x| satisfies(a.value(x), Sign::Empty))
        && !r.neg.iter().any(|&x| satisfies(a.value(x), Sign::Empty))
}

/// Applicable and its body atom still unassigned.
pub fn rule_active(a: &PartialAssignment, g: &Grounder, rule: usize) -> bool {
    g.rule(rule).body_atom.is_some_and(|b| !a.is_assigned(b)) && rule_applicable(a, g, rule)
}

/// Picks the choice point realising directive `d`: the rule whose body atom
/// is set, and the value for it.
pub fn decide_from_directive(
    a: &PartialAssignment,
    g: &Grounder,
    d: &GroundHeuristicDirective,
    deriving: &[usize],
) -> Result<(usize, bool), DecisionError> {
    if d.head_sign.head_polarity() {
        deriving
            .iter()
            .copied()
            .filter(|&r| rule_active(a, g, r))
            .min()
            .map(|r| (r, true))
            .ok_or(DecisionError::NoDerivingRule)
    } else {
        match deriving {
            [] => Err(DecisionError::NoDerivingRule),
            [r] if rule_active(a, g, *r) => Ok((*r, false)),
            [_] => Err(DecisionError::NoDerivingRule),
            _ => Err(DecisionError::AmbiguousNegative),
        }
    }
}

type HeapKey = (i64, i64, Reverse<u64>, usize);

/// Max-heap of ground directives keyed by (level, weight, tie-break).
///
/// Entries are validated when popped. Directives whose head is assigned or
/// whose negative condition is hit wait in `dead` until a backtrack undoes
/// the responsible level; those missing a positive condition atom wait on
/// that atom.
#[derive(Debug, Clone)]
pub struct HeuristicPool {
    heap: BinaryHeap<HeapKey>,
    in_heap: Vec<bool>,
    keys: Vec<HeapKey>,
    dead: Vec<(u32, usize)>,
    waiting: HashMap<AtomId, Vec<usize>>,
    skipped: Vec<usize>,
    rng: Option<ChaCha8Rng>,
}

impl HeuristicPool {
    /// With a seed, ties are broken uniformly at random instead of by id.
    pub fn new(seed: Option<u64>) -> HeuristicPool {
        HeuristicPool {
            heap: BinaryHeap::new(),
            in_heap: Vec::new(),
            keys: Vec::new(),
            dead: Vec::new(),
            waiting: HashMap::new(),
            skipped: Vec::new(),
            rng: seed.map(ChaCha8Rng::seed_from_u64),
        }
    }

    pub fn add(&mut self, d: &GroundHeuristicDirective) {
        debug_assert_eq!(d.id, self.keys.len());
        let tie = match &mut self.rng {
            Some(rng) => rng.gen::<u64>(),
            None => d.id as u64,
        };
        self.keys.push((d.level, d.weight, Reverse(tie), d.id));
        self.in_heap.push(false);
        self.push(d.id);
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn push(&mut self, id: usize) {
        if !self.in_heap[id] {
            self.in_heap[id] = true;
            self.heap.push(self.keys[id]);
        }
    }

    /// Re-activates directives waiting on `atom`, which just got a value.
    pub fn notify(&mut self, atom: AtomId) {
        if let Some(ids) = self.waiting.remove(&atom) {
            for id in ids {
                self.push(id);
            }
        }
    }

    /// Re-activates directives shelved at levels above `level`.
    pub fn backtrack_to(&mut self, level: u32) {
        let mut keep = Vec::with_capacity(self.dead.len());
        for (l, id) in std::mem::take(&mut self.dead) {
            if l > level {
                self.push(id);
            } else {
                keep.push((l, id));
            }
        }
        self.dead = keep;
    }

    /// Sets aside a directive whose decision failed until the next call to
    /// `release_skipped`.
    pub fn skip(&mut self, id: usize) {
        self.skipped.push(id);
    }

    pub fn release_skipped(&mut self) {
        for id in std::mem::take(&mut self.skipped) {
            self.push(id);
        }
    }

    /// Applicable directive of highest priority, popped from the heap.
    pub fn select(&mut self, a: &PartialAssignment, g: &Grounder) -> Option<usize> {
        while let Some((_, _, _, id)) = self.heap.pop() {
            self.in_heap[id] = false;
            let d = g.directive(id);
            if let Some(TruthValue::T | TruthValue::F) = a.value(d.head) {
                self.dead.push((a.level_of(d.head), id));
                continue;
            }
            if let Some(l) = self.neg_hit_level(a, g, d) {
                self.dead.push((l, id));
                continue;
            }
            if let Some(&(s, x)) = d.pos.iter().find(|&&(s, x)| !satisfies(a.value(x), s)) {
                let v = a.value(x);
                if v.is_none() || (s == Sign::Plus && v == Some(TruthValue::M)) {
                    self.waiting.entry(x).or_default().push(id);
                } else {
                    self.dead.push((a.level_of(x), id));
                }
                continue;
            }
            return Some(id);
        }
        None
    }

    fn neg_hit_level(
        &self,
        a: &PartialAssignment,
        g: &Grounder,
        d: &GroundHeuristicDirective,
    ) -> Option<u32> {
        let store = g.store();
        for n in &d.neg {
            if n.is_pattern() {
                let hit = store
                    .atoms_of(n.atom.pred)
                    .iter()
                    .find(|&&x| satisfies(a.value(x), n.sign) && n.matches(store.atom(x)));
                if let Some(&x) = hit {
                    return Some(a.level_of(x));
                }
            } else if let Some(x) = store.get(&n.atom) {
                if satisfies(a.value(x), n.sign) {
                    return Some(a.level_of(x));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignment::Reason;
    use crate::frontend::load;
    use crate::ground::{GroundAtom, Value, DEFAULT_CAP};
    use proptest::prelude::*;
    use TruthValue::*;

    const STATES: [Option<TruthValue>; 4] = [None, Some(F), Some(M), Some(T)];

    fn lit(negated: bool, sign: Sign) -> HeuristicLiteral {
        HeuristicLiteral { negated, sign }
    }

    #[test]
    fn must_be_true_cases() {
        assert!(!satisfies_literal(Some(M), lit(true, Sign::Empty)));
        assert!(!satisfies_literal(Some(M), lit(false, Sign::Plus)));
        assert!(satisfies_literal(None, lit(true, Sign::Minus)));
        assert!(satisfies_literal(Some(F), lit(false, Sign::Minus)));
    }

    #[test]
    fn negation_complements_and_strong_implies_plain() {
        for v in STATES {
            for s in [Sign::Empty, Sign::Plus, Sign::Minus] {
                assert_eq!(
                    satisfies_literal(v, lit(true, s)),
                    !satisfies_literal(v, lit(false, s))
                );
            }
            if satisfies(v, Sign::Plus) {
                assert!(satisfies(v, Sign::Empty));
            }
            if satisfies(v, Sign::Minus) {
                assert!(!satisfies(v, Sign::Empty));
            }
        }
    }

    const EXAMPLE3: &str = "{a(2);a(4);a(6);a(8);a(5)}.
        #heuristic a(5). [1]
        #heuristic a(4) : not a(5). [2]
        #heuristic -a(5) : a(4). [2]
        #heuristic a(6) : -a(5), +a(4). [2]";

    fn atom(g: &Grounder, n: i64) -> AtomId {
        let pred = g.store().lookup_predicate("a", 1).unwrap();
        g.store()
            .get(&GroundAtom {
                pred,
                args: vec![Value::Int(n)],
            })
            .unwrap()
    }

    fn example3() -> (Grounder, PartialAssignment) {
        let g = crate::ground::full_grounding(&load(EXAMPLE3).unwrap(), DEFAULT_CAP).unwrap();
        let mut a = PartialAssignment::new();
        a.grow(g.store().len());
        (g, a)
    }

    fn by_source(g: &Grounder, src: usize) -> &GroundHeuristicDirective {
        g.directives().iter().find(|d| d.source == src).unwrap()
    }

    #[test]
    fn example_three_conditions() {
        let (g, mut a) = example3();
        let (a4, a5) = (atom(&g, 4), atom(&g, 5));
        let d4 = by_source(&g, 0);
        let d5 = by_source(&g, 1);
        let d6 = by_source(&g, 2);
        let d7 = by_source(&g, 3);
        assert!(is_applicable(&a, &g, d4));
        assert!(is_applicable(&a, &g, d5));
        assert!(!condition_satisfied(&a, &g, d6));
        assert!(!condition_satisfied(&a, &g, d7));
        a.assign(a4, T, Reason::Decision);
        assert!(condition_satisfied(&a, &g, d6));
        a.assign(a5, F, Reason::Support);
        assert!(condition_satisfied(&a, &g, d5));
        assert!(!is_applicable(&a, &g, d5));
        assert!(is_applicable(&a, &g, d7));
        assert!(!is_applicable(&a, &g, d4));
    }

    #[test]
    fn pool_prefers_weight_then_skips_assigned_heads() {
        let (g, mut a) = example3();
        let mut pool = HeuristicPool::new(None);
        for d in g.directives() {
            pool.add(d);
        }
        let first = pool.select(&a, &g).unwrap();
        assert_eq!(g.directive(first).source, 1);
        pool.push(first);
        a.new_level();
        a.assign(atom(&g, 4), T, Reason::Rule(0));
        let next = pool.select(&a, &g).unwrap();
        assert_eq!(g.directive(next).source, 2);
        a.backtrack_to(0);
        pool.backtrack_to(0);
        pool.push(next);
        assert_eq!(g.directive(pool.select(&a, &g).unwrap()).source, 1);
    }

    #[test]
    fn skipped_directives_return_only_when_released() {
        let (g, a) = example3();
        let mut pool = HeuristicPool::new(None);
        for d in g.directives() {
            pool.add(d);
        }
        let first = pool.select(&a, &g).unwrap();
        pool.skip(first);
        let second = pool.select(&a, &g).unwrap();
        assert_ne!(first, second);
        assert_eq!(pool.select(&a, &g), None);
        pool.release_skipped();
        assert_eq!(pool.select(&a, &g), Some(first));
    }

    #[test]
    fn head_at_must_be_true_is_applicable() {
        let (g, mut a) = example3();
        let d4 = by_source(&g, 0);
        a.assign(d4.head, M, Reason::Agg);
        assert!(is_applicable(&a, &g, d4));
    }

    fn directive(id: usize, weight: i64, level: i64) -> GroundHeuristicDirective {
        GroundHeuristicDirective {
            id,
            source: 0,
            head_sign: Sign::Empty,
            head: AtomId(id as u32),
            pos: vec![],
            neg: vec![],
            weight,
            level,
        }
    }

    #[test]
    fn level_dominates_weight() {
        let d1 = directive(0, 9, 0);
        let d2 = directive(1, 1, 1);
        let m = maxpriority(&[&d1, &d2]);
        assert_eq!(m, vec![&d2]);
    }

    proptest! {
        #[test]
        fn projection_and_literal_views_agree(
            vals in prop::collection::vec(prop::option::of(prop_oneof![Just(T), Just(F), Just(M)]), 5),
        ) {
            let (g, mut a) = example3();
            for (i, v) in vals.iter().enumerate() {
                if let Some(v) = v {
                    let x = atom(&g, [2, 4, 6, 8, 5][i]);
                    a.assign(x, *v, Reason::Decision);
                }
            }
            for d in g.directives() {
                prop_assert_eq!(
                    condition_satisfied(&a, &g, d),
                    condition_satisfied_by_projection(&a, &g, d)
                );
            }
        }
    }
}
