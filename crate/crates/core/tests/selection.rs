use lazyasp::assignment::{PartialAssignment, Reason, TruthValue};
use lazyasp::frontend::load;
use lazyasp::ground::{full_grounding, DEFAULT_CAP};
use lazyasp::heuristics::{is_applicable, maxpriority, HeuristicPool};
use proptest::prelude::*;

proptest! {
    #[test]
    fn select_is_in_maxpriority(
        prios in prop::collection::vec((0i64..4, 0i64..3, 0u8..5), 1..12),
        seed in prop::option::of(any::<u64>()),
    ) {
        let mut src = format!("n(1..{}). {{h(X) : n(X)}}.\n", prios.len());
        for (i, (w, l, _)) in prios.iter().enumerate() {
            src.push_str(&format!("#heuristic h({}). [{w}@{l}]\n", i + 1));
        }
        let g = full_grounding(&load(&src).unwrap(), DEFAULT_CAP).unwrap();
        let mut a = PartialAssignment::new();
        a.grow(g.store().len());
        for d in g.directives() {
            let v = match prios[d.source].2 {
                0 => TruthValue::T,
                1 => TruthValue::F,
                2 => TruthValue::M,
                _ => continue,
            };
            a.assign(d.head, v, Reason::Decision);
        }
        let mut pool = HeuristicPool::new(seed);
        for d in g.directives() {
            pool.add(d);
        }
        let applicable: Vec<_> = g.directives().iter().filter(|d| is_applicable(&a, &g, d)).collect();
        let best: Vec<usize> = maxpriority(&applicable).iter().map(|d| d.id).collect();
        match pool.select(&a, &g) {
            Some(id) => prop_assert!(best.contains(&id)),
            None => prop_assert!(best.is_empty()),
        }
        if best.len() > 1 {
            let second = pool.select(&a, &g).unwrap();
            prop_assert!(best.contains(&second));
        }
    }
}
