mod common;

use lazyasp::frontend::load;
use lazyasp::oracle::enumerate_answer_sets;
use lazyasp::solver::{solve, AnswerSet, SolverConfig};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn enumerate(src: &str, heuristics: bool, seed: Option<u64>) -> Vec<AnswerSet> {
    let cfg = SolverConfig {
        heuristics,
        seed,
        ..SolverConfig::default()
    };
    let mut v = solve(&load(src).unwrap(), 0, cfg).unwrap().0;
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn heuristics_never_change_the_answer_sets(seed: u64, tie in proptest::option::of(any::<u64>())) {
        let src = common::random_program(&mut ChaCha8Rng::seed_from_u64(seed));
        let mut expected = enumerate_answer_sets(&load(&src).unwrap()).unwrap();
        expected.sort();
        let on = enumerate(&src, true, tie);
        prop_assert_eq!(&on, &expected, "{}", src);
        prop_assert_eq!(enumerate(&src, false, None), expected, "{}", src);
    }
}
