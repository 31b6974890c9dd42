#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

const PROPS: [&str; 3] = ["q", "r", "s"];

fn atom(rng: &mut impl Rng, vars: &mut bool) -> String {
    match rng.gen_range(0..3) {
        0 => {
            *vars = true;
            "p(X)".to_string()
        }
        1 => format!("p({})", rng.gen_range(1..=3)),
        _ => PROPS.choose(rng).unwrap().to_string(),
    }
}

fn body(rng: &mut impl Rng, vars: &mut bool) -> Vec<String> {
    (0..rng.gen_range(1..=3))
        .map(|_| {
            let a = atom(rng, vars);
            if rng.gen_bool(0.4) {
                format!("not {a}")
            } else {
                a
            }
        })
        .collect()
}

fn with_domain(mut lits: Vec<String>, vars: bool) -> String {
    if vars {
        lits.insert(0, "d(X)".to_string());
    }
    lits.join(", ")
}

/// A small random program over d/1, p/1 and three propositions, followed by
/// random safe directives. Its Herbrand base stays within 9 atoms.
pub fn random_program(rng: &mut impl Rng) -> String {
    let mut out = vec!["d(1..3).".to_string()];
    if rng.gen_bool(0.7) {
        out.push("{p(X) : d(X)}.".to_string());
    }
    if rng.gen_bool(0.5) {
        out.push("{q; r}.".to_string());
    }
    for _ in 0..rng.gen_range(1..=4) {
        let mut vars = false;
        let head = atom(rng, &mut vars);
        let b = body(rng, &mut vars);
        out.push(format!("{head} :- {}.", with_domain(b, vars)));
    }
    if rng.gen_bool(0.4) {
        let f = if rng.gen_bool(0.5) { "#count" } else { "#sum" };
        let k = rng.gen_range(1..=4);
        let head = PROPS.choose(rng).unwrap();
        out.push(format!("{head} :- {k} <= {f} {{ X : p(X) }}."));
    }
    if rng.gen_bool(0.5) {
        let mut vars = false;
        let b = body(rng, &mut vars);
        out.push(format!(":- {}.", with_domain(b, vars)));
    }
    for _ in 0..rng.gen_range(1..=3) {
        out.push(random_directive(rng));
    }
    out.join("\n")
}

pub fn random_directive(rng: &mut impl Rng) -> String {
    let mut vars = false;
    let head = atom(rng, &mut vars);
    let sign = *["", "", "-", "+"].choose(rng).unwrap();
    let mut cond = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        let a = atom(rng, &mut vars);
        let s = *["", "+", "-"].choose(rng).unwrap();
        let neg = if rng.gen_bool(0.5) { "not " } else { "" };
        cond.push(format!("{neg}{s}{a}"));
    }
    if vars {
        cond.insert(0, "d(X)".to_string());
    }
    let cond = if cond.is_empty() {
        String::new()
    } else {
        format!(" : {}", cond.join(", "))
    };
    let w = if vars && rng.gen_bool(0.5) {
        "X".to_string()
    } else {
        rng.gen_range(0..5).to_string()
    };
    format!(
        "#heuristic {sign}{head}{cond}. [{w}@{}]",
        rng.gen_range(0..3)
    )
}
