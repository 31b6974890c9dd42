mod common;

use lazyasp::corpus::{PAPER, SMALL};
use lazyasp::frontend::parse;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn round_trips(src: &str) {
    let p = parse(src).unwrap();
    let printed = p.to_string();
    assert_eq!(parse(&printed).unwrap(), p, "{printed}");
}

#[test]
fn corpus_round_trips() {
    for (_, src) in PAPER.iter().chain(SMALL) {
        round_trips(src);
    }
}

proptest! {
    #[test]
    fn random_programs_round_trip(seed: u64) {
        round_trips(&common::random_program(&mut ChaCha8Rng::seed_from_u64(seed)));
    }
}
