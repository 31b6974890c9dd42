use lazyasp::corpus::{BPP_PAPER, PAPER, SMALL};
use lazyasp::frontend::load;
use lazyasp::ground::{full_grounding, AtomId, DEFAULT_CAP};
use lazyasp::oracle::enumerate_answer_sets;
use lazyasp::solver::{solve, AnswerSet, SolverConfig};

fn sorted(mut v: Vec<AnswerSet>) -> Vec<AnswerSet> {
    v.sort();
    v
}

fn enumerate(src: &str, heuristics: bool) -> Vec<AnswerSet> {
    let cfg = SolverConfig {
        heuristics,
        ..SolverConfig::default()
    };
    sorted(solve(&load(src).unwrap(), 0, cfg).unwrap().0)
}

fn herbrand_size(src: &str) -> usize {
    let g = full_grounding(&load(src).unwrap(), DEFAULT_CAP).unwrap();
    (0..g.store().len())
        .filter(|&i| !g.store().is_internal(AtomId(i as u32)))
        .count()
}

#[test]
fn small_corpus_matches_oracle() {
    assert!(SMALL.len() >= 20);
    for (name, src) in SMALL {
        assert!(herbrand_size(src) <= 12, "{name}");
        let expected = sorted(enumerate_answer_sets(&load(src).unwrap()).unwrap());
        assert_eq!(enumerate(src, true), expected, "{name} with heuristics");
        assert_eq!(enumerate(src, false), expected, "{name} without heuristics");
    }
}

#[test]
fn paper_examples_match_oracle() {
    for (name, src) in PAPER.iter().filter(|(n, _)| *n != "bpp_paper") {
        let expected = sorted(enumerate_answer_sets(&load(src).unwrap()).unwrap());
        assert_eq!(enumerate(src, true), expected, "{name}");
        assert_eq!(enumerate(src, false), expected, "{name}");
    }
}

#[test]
fn paper_bin_packing_has_six_packings() {
    let on = enumerate(BPP_PAPER, true);
    assert_eq!(on.len(), 6);
    assert_eq!(on, enumerate(BPP_PAPER, false));
}

#[test]
fn no_duplicate_answer_sets() {
    for (name, src) in SMALL {
        let mut v = enumerate(src, true);
        let n = v.len();
        v.dedup();
        assert_eq!(v.len(), n, "{name}");
    }
}
