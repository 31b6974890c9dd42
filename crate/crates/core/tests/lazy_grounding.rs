mod common;

use std::collections::BTreeSet;

use lazyasp::bpp::gen_bpp;
use lazyasp::corpus::BPP_ENCODING;
use lazyasp::frontend::load;
use lazyasp::ground::{full_grounding, Grounder, DEFAULT_CAP};
use lazyasp::solver::{Solver, SolverConfig};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rule_texts(g: &Grounder) -> BTreeSet<String> {
    g.rules().iter().map(|r| g.format_rule(r)).collect()
}

fn lazy_after_search(src: &str) -> Solver {
    let mut s = Solver::new(&load(src).unwrap(), SolverConfig::default()).unwrap();
    while s.next_answer_set().unwrap().is_some() {}
    s
}

#[test]
fn bpp30_grounds_a_fraction_of_the_full_program() {
    let inst = gen_bpp(30, 10, 9, 7).unwrap();
    let src = format!("{BPP_ENCODING}\n{}", inst.to_program());
    let mut s = Solver::new(&load(&src).unwrap(), SolverConfig::default()).unwrap();
    s.next_answer_set().unwrap().unwrap();
    let g = s.grounder();
    assert!(g.emission_log().iter().all(|e| e.body_known));
    let full = full_grounding(&load(&src).unwrap(), DEFAULT_CAP).unwrap();
    assert!(g.rules().len() < full.rules().len());
    assert!(g.directives().len() <= full.directives().len());
    assert!(rule_texts(g).is_subset(&rule_texts(&full)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lazy_rules_are_a_subset_of_the_full_grounding(seed: u64) {
        let src = common::random_program(&mut ChaCha8Rng::seed_from_u64(seed));
        let s = lazy_after_search(&src);
        let g = s.grounder();
        prop_assert!(g.emission_log().iter().all(|e| e.body_known));
        let full = full_grounding(&load(&src).unwrap(), DEFAULT_CAP).unwrap();
        prop_assert!(rule_texts(g).is_subset(&rule_texts(&full)), "{}", src);
        prop_assert!(g.directives().len() <= full.directives().len());
    }
}
