//! Bundled programs: the worked examples, the bin-packing encoding, and a
//! set of small programs for exhaustive comparison against the oracle.

pub const EXAMPLE1: &str = include_str!("../../../corpus/example1.lp");
pub const EXAMPLE2_BOUNDED: &str = include_str!("../../../corpus/example2_bounded.lp");
pub const EXAMPLE3: &str = include_str!("../../../corpus/example3.lp");
pub const EXAMPLE5: &str = include_str!("../../../corpus/example5.lp");
pub const EX_TWO_STABLE: &str = include_str!("../../../corpus/ex_two_stable.lp");
pub const BPP_ENCODING: &str = include_str!("../../../corpus/bpp_encoding.lp");
pub const BPP_PAPER: &str = include_str!("../../../corpus/bpp_paper.lp");

/// Runnable programs shipped in `corpus/`.
pub const PAPER: &[(&str, &str)] = &[
    ("example1", EXAMPLE1),
    ("example3", EXAMPLE3),
    ("example5", EXAMPLE5),
    ("ex_two_stable", EX_TWO_STABLE),
    ("bpp_paper", BPP_PAPER),
];

/// Small programs covering negation cycles, constraints, choices, monotone
/// aggregates and directives of every sign.
pub const SMALL: &[(&str, &str)] = &[
    ("two_stable", "b :- not c. c :- not b."),
    ("odd_loop", "a :- not a."),
    ("odd_loop_escape", "{b}. a :- not a. a :- b."),
    ("positive_loop", "a :- b. b :- a. c :- not a."),
    ("three_cycle", "a :- not b. b :- not c. c :- not a."),
    (
        "even_chain",
        "a :- not b. b :- not a. c :- a. d :- b, not c.",
    ),
    ("unsat_fact", "a. :- a."),
    (
        "choice_constraint",
        "{a; b; c}. :- a, b. :- not c.
         #heuristic a. [1]",
    ),
    (
        "choice_condition",
        "n(1..3). {p(X) : n(X)}. :- p(1), p(2).
         #heuristic p(X) : n(X). [X]",
    ),
    (
        "count_at_least",
        "n(1..3). {p(X) : n(X)}. ok :- 2 <= #count { X : p(X) }. :- not ok.",
    ),
    (
        "sum_limit",
        "n(1..3). {p(X) : n(X)}. :- 4 <= #sum { X : p(X) }.
         #heuristic p(3). [2]
         #heuristic p(X) : n(X), not p(3). [X]",
    ),
    (
        "sum_lower",
        "n(1..4). {p(X) : n(X)}. big :- 6 <= #sum { X : p(X) }. :- not big.
         #heuristic p(X) : n(X), not big. [X]",
    ),
    (
        "self_count",
        "p(1) :- 1 <= #count { X : p(X) }. q :- not p(1).",
    ),
    (
        "count_support",
        "{a}. b :- 1 <= #count { 1 : a }. c :- not b.",
    ),
    (
        "paths",
        "e(1,2). e(2,3). path(X,Y) :- e(X,Y). path(X,Z) :- e(X,Y), path(Y,Z).",
    ),
    (
        "coloring",
        "node(1). node(2). col(r). col(g). edge(1,2).
         {color(N,C) : col(C)} :- node(N).
         has(N) :- color(N,C).
         :- node(N), not has(N).
         :- color(N,C), color(N,D), C != D.
         :- edge(X,Y), color(X,C), color(Y,C).
         #heuristic color(N,r) : node(N), not has(N). [N]",
    ),
    (
        "signed_directives",
        "{a; b; c}. :- a, not b.
         #heuristic -a : not b. [3]
         #heuristic c : -a. [2]
         #heuristic +b : +c. [1]",
    ),
    ("nested_choice", "{a}. {b} :- a. c :- b, not a. d :- not b."),
    (
        "wildcard_condition",
        "n(1..3). {p(X) : n(X)}. :- p(1), p(3). some :- p(X).
         #heuristic p(X) : n(X), not p(_). [X]",
    ),
    (
        "levels",
        "{a; b}. :- not a, not b.
         #heuristic a. [5@1]
         #heuristic b. [9@0]",
    ),
    (
        "negative_head",
        "{a; b}. c :- a. c :- b. :- not c.
         #heuristic -a. [2]
         #heuristic -c. [1]",
    ),
    (
        "must_be_true",
        "{a; b}. c :- a. c :- b. :- not c.
         #heuristic a : not c. [2]
         #heuristic b : not +c. [1]",
    ),
    (
        "arithmetic",
        "n(1..3). {p(X) : n(X)}. q(X) :- p(X), n(X+1). :- q(2), not p(1).",
    ),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::load;

    #[test]
    fn everything_loads() {
        for (name, src) in PAPER.iter().chain(SMALL) {
            assert!(load(src).is_ok(), "{name}");
        }
    }

    #[test]
    fn bounded_choice_is_rejected() {
        assert_eq!(
            load(EXAMPLE2_BOUNDED).unwrap_err().code(),
            "E_UNSUPPORTED_BOUNDS"
        );
    }

    #[test]
    fn paper_instance_extends_the_encoding() {
        assert!(BPP_PAPER.starts_with(BPP_ENCODING));
    }
}
