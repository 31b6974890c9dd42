//! Search over body-representing choice points, interleaved with lazy
//! grounding and guided by the heuristic pool.

use std::collections::VecDeque;
use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::assignment::{AssignOutcome, PartialAssignment, Reason, TruthValue};
use crate::error::Result;
use crate::frontend::ast::Program;
use crate::ground::{AggRole, AtomId, Batch, Grounder, DEFAULT_CAP};
use crate::heuristics::{decide_from_directive, rule_active, HeuristicPool};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    pub heuristics: bool,
    /// Random tie-breaking among equal-priority directives.
    pub seed: Option<u64>,
    pub cap: usize,
    pub trace: bool,
    /// Stop searching after this many decisions.
    pub decision_limit: Option<u64>,
}

impl Default for SolverConfig {
    fn default() -> SolverConfig {
        SolverConfig {
            heuristics: true,
            seed: None,
            cap: DEFAULT_CAP,
            trace: false,
            decision_limit: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Statistics {
    pub decisions: u64,
    pub heuristic_decisions: u64,
    pub backtracks: u64,
    pub ground_rules: usize,
    pub ground_directives: usize,
    /// Left out of serialized and displayed statistics so that output is
    /// reproducible.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "decisions: {}", self.decisions)?;
        writeln!(f, "heuristic decisions: {}", self.heuristic_decisions)?;
        writeln!(f, "backtracks: {}", self.backtracks)?;
        writeln!(f, "ground rules: {}", self.ground_rules)?;
        write!(f, "ground directives: {}", self.ground_directives)
    }
}

/// User-visible atoms of an answer set, sorted by their printed form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AnswerSet(pub Vec<String>);

impl AnswerSet {
    pub fn new(mut atoms: Vec<String>) -> AnswerSet {
        atoms.sort();
        atoms.dedup();
        AnswerSet(atoms)
    }

    pub fn contains(&self, atom: &str) -> bool {
        self.0.iter().any(|a| a == atom)
    }
}

impl fmt::Display for AnswerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.join(", "))
    }
}

/// A decision as recorded in the trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionEvent {
    pub atom: String,
    pub value: bool,
    /// Ground directive id, or `None` for the fallback.
    pub directive: Option<usize>,
    pub weight: i64,
    pub level: i64,
}

impl fmt::Display for DecisionEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = if self.value { "T" } else { "F" };
        let dir = self
            .directive
            .map_or_else(|| "fallback".to_string(), |d| d.to_string());
        write!(
            f,
            "DECIDE {}={v} dir={dir} w={} l={}",
            self.atom, self.weight, self.level
        )
    }
}

#[derive(Debug, Clone, Copy)]
struct Decision {
    body: AtomId,
    value: bool,
    flipped: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Work {
    Rule(usize),
    Group(usize),
    Support(AtomId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Fixpoint,
    Conflict,
}

pub struct Solver {
    g: Grounder,
    a: PartialAssignment,
    pool: HeuristicPool,
    cfg: SolverConfig,
    atom_rules: Vec<Vec<usize>>,
    rules_by_head: Vec<Vec<usize>>,
    queue: VecDeque<Work>,
    queued_rules: Vec<bool>,
    queued_groups: Vec<bool>,
    /// Work items introduced by grounding, tagged with the level they were
    /// last checked at; replayed when a backtrack goes below that level.
    replay: Vec<(u32, Work)>,
    decisions: Vec<Decision>,
    qhead: usize,
    fed: usize,
    started: bool,
    exhausted: bool,
    interrupted: bool,
    stats: Statistics,
    trace: Vec<String>,
    decision_log: Vec<DecisionEvent>,
    start: Instant,
}

impl Solver {
    pub fn new(p: &Program, cfg: SolverConfig) -> Result<Solver> {
        let g = Grounder::new(p, cfg.cap)?;
        Ok(Solver {
            g,
            a: PartialAssignment::new(),
            pool: HeuristicPool::new(cfg.seed),
            cfg,
            atom_rules: Vec::new(),
            rules_by_head: Vec::new(),
            queue: VecDeque::new(),
            queued_rules: Vec::new(),
            queued_groups: Vec::new(),
            replay: Vec::new(),
            decisions: Vec::new(),
            qhead: 0,
            fed: 0,
            started: false,
            exhausted: false,
            interrupted: false,
            stats: Statistics::default(),
            trace: Vec::new(),
            decision_log: Vec::new(),
            start: Instant::now(),
        })
    }

    pub fn grounder(&self) -> &Grounder {
        &self.g
    }

    pub fn assignment(&self) -> &PartialAssignment {
        &self.a
    }

    pub fn statistics(&self) -> Statistics {
        let mut s = self.stats.clone();
        s.ground_rules = self.g.rules().len();
        s.ground_directives = self.g.directives().len();
        s.wall_time = self.start.elapsed();
        s
    }

    /// The decision limit was reached before the search finished.
    pub fn is_interrupted(&self) -> bool {
        self.interrupted
    }

    /// Every decision taken so far, in order.
    pub fn decisions(&self) -> &[DecisionEvent] {
        &self.decision_log
    }

    /// Trace lines produced since the last call.
    pub fn take_trace(&mut self) -> Vec<String> {
        std::mem::take(&mut self.trace)
    }

    /// Searches for the next answer set; `None` once the space is exhausted.
    pub fn next_answer_set(&mut self) -> Result<Option<AnswerSet>> {
        if self.exhausted {
            return Ok(None);
        }
        if !self.started {
            self.started = true;
            self.init()?;
        } else if !self.resolve_conflict() {
            return Ok(self.finish());
        }
        loop {
            if self.propagate()? == Status::Conflict {
                if !self.resolve_conflict() {
                    return Ok(self.finish());
                }
                continue;
            }
            if self
                .cfg
                .decision_limit
                .is_some_and(|l| self.stats.decisions >= l)
            {
                self.interrupted = true;
                return Ok(self.finish());
            }
            if self.decide() {
                continue;
            }
            if self.close_unassigned() {
                continue;
            }
            if self.check_answer_set() {
                return Ok(Some(self.answer_set()));
            }
            if !self.resolve_conflict() {
                return Ok(self.finish());
            }
        }
    }

    fn finish(&mut self) -> Option<AnswerSet> {
        self.exhausted = true;
        None
    }

    fn init(&mut self) -> Result<()> {
        let batch = self.g.initial()?;
        self.integrate(batch);
        for f in self.g.facts().to_vec() {
            self.grow();
            if self.assign(f, TruthValue::T, Reason::Fact) == AssignOutcome::Conflict {
                unreachable!("facts cannot clash");
            }
        }
        Ok(())
    }

    fn grow(&mut self) {
        let n = self.g.store().len();
        self.a.grow(n);
        if self.atom_rules.len() < n {
            self.atom_rules.resize_with(n, Vec::new);
            self.rules_by_head.resize_with(n, Vec::new);
        }
    }

    fn assign(&mut self, x: AtomId, v: TruthValue, reason: Reason) -> AssignOutcome {
        let out = self.a.assign(x, v, reason);
        if self.cfg.trace && matches!(out, AssignOutcome::Ok | AssignOutcome::Promoted) {
            self.trace.push(format!(
                "ASSIGN {}={v} @{} reason={reason}",
                self.g.store().display(x),
                self.a.current_level()
            ));
        }
        out
    }

    fn enqueue(&mut self, w: Work) {
        match w {
            Work::Rule(r) => {
                if std::mem::replace(&mut self.queued_rules[r], true) {
                    return;
                }
            }
            Work::Group(gi) => {
                if std::mem::replace(&mut self.queued_groups[gi], true) {
                    return;
                }
            }
            Work::Support(_) => {}
        }
        self.queue.push_back(w);
    }

    fn integrate(&mut self, batch: Batch) {
        self.grow();
        let level = self.a.current_level();
        self.queued_rules.resize(self.g.rules().len(), false);
        self.queued_groups.resize(self.g.groups().len(), false);
        for r in batch.rules.clone() {
            let rule = self.g.rule(r).clone();
            let mut atoms: Vec<AtomId> = rule.pos.iter().chain(&rule.neg).copied().collect();
            atoms.extend(rule.head);
            atoms.extend(rule.body_atom);
            atoms.sort_unstable();
            atoms.dedup();
            for x in atoms {
                self.atom_rules[x.index()].push(r);
            }
            if let Some(h) = rule.head {
                self.rules_by_head[h.index()].push(r);
            }
            self.enqueue(Work::Rule(r));
            if level > 0 {
                self.replay.push((level, Work::Rule(r)));
            }
        }
        for gi in batch.groups {
            self.enqueue(Work::Group(gi));
            if level > 0 {
                self.replay.push((level, Work::Group(gi)));
            }
        }
        for i in batch.atoms {
            let x = AtomId(i as u32);
            if !self.g.is_body_atom(x) && self.g.role(x).is_none() {
                self.enqueue(Work::Support(x));
                if level > 0 {
                    self.replay.push((level, Work::Support(x)));
                }
            }
        }
        if self.cfg.heuristics {
            for d in batch.directives {
                self.pool.add(self.g.directive(d));
            }
        }
    }

    fn propagate(&mut self) -> Result<Status> {
        loop {
            while self.qhead < self.a.trail().len() {
                let x = self.a.trail()[self.qhead].atom;
                self.qhead += 1;
                for i in 0..self.atom_rules[x.index()].len() {
                    let r = self.atom_rules[x.index()][i];
                    self.enqueue(Work::Rule(r));
                }
                match self.g.role(x) {
                    Some(AggRole::Element(gi) | AggRole::Node(gi)) => self.enqueue(Work::Group(gi)),
                    None => {}
                }
                self.pool.notify(x);
            }
            if let Some(w) = self.queue.pop_front() {
                let ok = match w {
                    Work::Rule(r) => {
                        self.queued_rules[r] = false;
                        self.check_rule(r)
                    }
                    Work::Group(gi) => {
                        self.queued_groups[gi] = false;
                        self.check_group(gi)
                    }
                    Work::Support(x) => self.check_support(x),
                };
                if !ok {
                    return Ok(Status::Conflict);
                }
                continue;
            }
            let (known, false_seen) = self.unfed();
            if known.is_empty() && false_seen.is_empty() {
                return Ok(Status::Fixpoint);
            }
            let batch = self.g.ground_new(&known, &false_seen)?;
            self.integrate(batch);
        }
    }

    fn unfed(&mut self) -> (Vec<AtomId>, Vec<AtomId>) {
        let mut known = Vec::new();
        let mut false_seen = Vec::new();
        let trail = self.a.trail();
        for e in &trail[self.fed.min(trail.len())..] {
            if self.g.is_body_atom(e.atom) {
                continue;
            }
            match e.new {
                TruthValue::F => false_seen.push(e.atom),
                TruthValue::T | TruthValue::M => known.push(e.atom),
            }
        }
        self.fed = trail.len();
        (known, false_seen)
    }

    fn set(&mut self, x: AtomId, v: TruthValue, reason: Reason) -> bool {
        self.assign(x, v, reason) != AssignOutcome::Conflict
    }

    fn check_rule(&mut self, ri: usize) -> bool {
        use TruthValue::*;
        let r = self.g.rule(ri).clone();
        let val = |x: AtomId| self.a.value(x);
        let body_false = r.pos.iter().any(|&p| val(p) == Some(F))
            || r.neg.iter().any(|&n| matches!(val(n), Some(T | M)));
        let justified =
            r.pos.iter().all(|&p| val(p) == Some(T)) && r.neg.iter().all(|&n| val(n) == Some(F));
        // Literals that cannot be false any more, and the undecided rest.
        let open: Vec<(AtomId, bool)> = r
            .pos
            .iter()
            .filter(|&&p| val(p).is_none())
            .map(|&p| (p, true))
            .chain(
                r.neg
                    .iter()
                    .filter(|&&n| val(n).is_none())
                    .map(|&n| (n, false)),
            )
            .collect();

        let Some(head) = r.head else {
            if body_false {
                return true;
            }
            return match open.as_slice() {
                [] => false,
                [(x, true)] => self.set(*x, F, Reason::Constraint(ri)),
                [(x, false)] => self.set(*x, M, Reason::Constraint(ri)),
                _ => true,
            };
        };
        let beta = r.body_atom.expect("rules with heads have body atoms");
        let reason = Reason::Rule(ri);
        if body_false && !self.set(beta, F, reason) {
            return false;
        }
        if justified && !(self.set(beta, T, reason) && self.set(head, T, reason)) {
            return false;
        }
        if self.a.value(head) == Some(F) && !self.set(beta, F, reason) {
            return false;
        }
        match self.a.value(beta) {
            Some(T) => {
                for &n in &r.neg {
                    if !self.set(n, F, reason) {
                        return false;
                    }
                }
                for &p in &r.pos {
                    if self.a.value(p).is_none() && !self.set(p, M, reason) {
                        return false;
                    }
                }
                self.set(head, M, reason)
            }
            Some(F) => {
                let ok = match open.as_slice() {
                    [] if !body_false => false,
                    [(x, true)] if !body_false => self.set(*x, F, reason),
                    [(x, false)] if !body_false => self.set(*x, M, reason),
                    _ => true,
                };
                if ok && self.a.value(head) != Some(T) {
                    self.enqueue(Work::Support(head));
                }
                ok
            }
            _ => true,
        }
    }

    fn check_group(&mut self, gi: usize) -> bool {
        use TruthValue::*;
        let group = self.g.groups()[gi].clone();
        let (mut sum_t, mut sum_tm) = (0i64, 0i64);
        for &(e, w) in &group.elements {
            match self.a.value(e) {
                Some(T) => {
                    sum_t = sum_t.saturating_add(w);
                    sum_tm = sum_tm.saturating_add(w);
                }
                Some(M) => sum_tm = sum_tm.saturating_add(w),
                _ => {}
            }
        }
        for &(node, k) in &group.nodes {
            if sum_t >= k {
                if !self.set(node, T, Reason::Agg) {
                    return false;
                }
            } else if sum_tm >= k && !self.set(node, M, Reason::Agg) {
                return false;
            }
            if self.a.value(node) == Some(F) {
                for &(e, w) in &group.elements {
                    if self.a.value(e).is_none()
                        && sum_tm.saturating_add(w) >= k
                        && !self.set(e, F, Reason::Agg)
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Sets `x` false when no instance that could derive it can still fire.
    fn check_support(&mut self, x: AtomId) -> bool {
        use TruthValue::*;
        if matches!(self.a.value(x), Some(T | F)) {
            return true;
        }
        let Some(cands) = self.g.support_candidates(x) else {
            return true;
        };
        let dead = cands.iter().all(|c| {
            c.rule
                .and_then(|r| self.g.rule(r).body_atom)
                .is_some_and(|b| self.a.value(b) == Some(F))
                || c.pos.iter().flatten().any(|&p| self.a.value(p) == Some(F))
                || c.neg
                    .iter()
                    .flatten()
                    .any(|&n| matches!(self.a.value(n), Some(T | M)))
        });
        !dead || self.set(x, F, Reason::Support)
    }

    fn decide(&mut self) -> bool {
        if self.cfg.heuristics {
            self.pool.release_skipped();
            while let Some(id) = self.pool.select(&self.a, &self.g) {
                let d = self.g.directive(id).clone();
                match decide_from_directive(
                    &self.a,
                    &self.g,
                    &d,
                    &self.rules_by_head[d.head.index()],
                ) {
                    Ok((rule, value)) => {
                        let event = DecisionEvent {
                            atom: self.g.store().display(d.head),
                            value: d.head_sign.head_polarity(),
                            directive: Some(id),
                            weight: d.weight,
                            level: d.level,
                        };
                        self.stats.heuristic_decisions += 1;
                        self.pool.push(id);
                        let body = self.g.rule(rule).body_atom.expect("body atom");
                        self.make_decision(body, value, event);
                        return true;
                    }
                    Err(e) => {
                        log::warn!("{}: skipping `{}`", e.code(), self.g.format_directive(&d));
                        self.pool.skip(id);
                    }
                }
            }
        }
        let mut best: Option<(AtomId, usize)> = None;
        for r in 0..self.g.rules().len() {
            let Some(b) = self.g.rule(r).body_atom else {
                continue;
            };
            if best.is_some_and(|(bb, _)| bb <= b) {
                continue;
            }
            if rule_active(&self.a, &self.g, r) {
                best = Some((b, r));
            }
        }
        let Some((body, r)) = best else {
            return false;
        };
        let head = self.g.rule(r).head.expect("choice points have heads");
        let event = DecisionEvent {
            atom: self.g.store().display(head),
            value: true,
            directive: None,
            weight: 0,
            level: 0,
        };
        self.make_decision(body, true, event);
        true
    }

    fn make_decision(&mut self, body: AtomId, value: bool, event: DecisionEvent) {
        self.stats.decisions += 1;
        if self.cfg.trace {
            self.trace.push(event.to_string());
        }
        self.decision_log.push(event);
        self.a.new_level();
        self.decisions.push(Decision {
            body,
            value,
            flipped: false,
        });
        let v = if value { TruthValue::T } else { TruthValue::F };
        let out = self.assign(body, v, Reason::Decision);
        debug_assert_eq!(out, AssignOutcome::Ok);
    }

    /// Chronological backtracking: undo to the newest unflipped decision and
    /// take its other branch. False when the search space is exhausted.
    fn resolve_conflict(&mut self) -> bool {
        while let Some(d) = self.decisions.pop() {
            let level = self.decisions.len() as u32;
            self.backtrack_to(level);
            if d.flipped {
                continue;
            }
            self.stats.backtracks += 1;
            self.a.new_level();
            self.decisions.push(Decision {
                body: d.body,
                value: !d.value,
                flipped: true,
            });
            let v = if d.value {
                TruthValue::F
            } else {
                TruthValue::T
            };
            if self.cfg.trace {
                self.trace.push(format!(
                    "FLIP {}={v} @{}",
                    self.g.store().display(d.body),
                    level + 1
                ));
            }
            self.assign(d.body, v, Reason::Flip);
            return true;
        }
        self.backtrack_to(0);
        false
    }

    fn backtrack_to(&mut self, level: u32) {
        if self.cfg.trace {
            self.trace.push(format!("BACKTRACK to={level}"));
        }
        self.a.backtrack_to(level);
        self.pool.backtrack_to(level);
        self.qhead = self.qhead.min(self.a.trail().len());
        self.fed = self.fed.min(self.a.trail().len());
        self.queue.clear();
        self.queued_rules.iter_mut().for_each(|q| *q = false);
        self.queued_groups.iter_mut().for_each(|q| *q = false);
        let mut keep = Vec::with_capacity(self.replay.len());
        for (l, w) in std::mem::take(&mut self.replay) {
            if l > level {
                self.enqueue(w);
                if level > 0 {
                    keep.push((level, w));
                }
            } else {
                keep.push((l, w));
            }
        }
        self.replay = keep;
    }

    /// With no active choice point left, nothing unassigned can become true.
    fn close_unassigned(&mut self) -> bool {
        let mut any = false;
        for i in 0..self.g.store().len() {
            let x = AtomId(i as u32);
            if !self.a.is_assigned(x) {
                self.assign(x, TruthValue::F, Reason::Closure);
                any = true;
            }
        }
        any
    }

    fn check_answer_set(&mut self) -> bool {
        use TruthValue::*;
        let val = |x: AtomId| self.a.value(x);
        if (0..self.g.store().len()).any(|i| matches!(val(AtomId(i as u32)), None | Some(M))) {
            return false;
        }
        for r in self.g.rules() {
            let body = r.pos.iter().all(|&p| val(p) == Some(T))
                && r.neg.iter().all(|&n| val(n) == Some(F));
            if body && r.head.is_none_or(|h| val(h) != Some(T)) {
                return false;
            }
            if let Some(b) = r.body_atom {
                if (val(b) == Some(T)) != body {
                    return false;
                }
            }
        }
        for group in self.g.groups() {
            let sum: i64 = group
                .elements
                .iter()
                .filter(|(e, _)| val(*e) == Some(T))
                .map(|(_, w)| *w)
                .sum();
            if group
                .nodes
                .iter()
                .any(|&(n, k)| (val(n) == Some(T)) != (sum >= k))
            {
                return false;
            }
        }
        true
    }

    fn answer_set(&self) -> AnswerSet {
        let store = self.g.store();
        AnswerSet::new(
            (0..store.len())
                .map(|i| AtomId(i as u32))
                .filter(|&x| self.a.value(x) == Some(TruthValue::T) && !store.is_internal(x))
                .map(|x| store.display(x))
                .collect(),
        )
    }
}

/// Enumerates up to `n` answer sets (all when `n == 0`).
pub fn solve(p: &Program, n: usize, cfg: SolverConfig) -> Result<(Vec<AnswerSet>, Statistics)> {
    let mut s = Solver::new(p, cfg)?;
    let mut out = Vec::new();
    while n == 0 || out.len() < n {
        match s.next_answer_set()? {
            Some(m) => out.push(m),
            None => break,
        }
    }
    Ok((out, s.statistics()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::load;

    fn all(src: &str, heuristics: bool) -> Vec<String> {
        let cfg = SolverConfig {
            heuristics,
            ..SolverConfig::default()
        };
        let (sets, _) = solve(&load(src).unwrap(), 0, cfg).unwrap();
        sets.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn even_loop_has_two_answer_sets() {
        assert_eq!(all("b :- not c. c :- not b.", true), vec!["{b}", "{c}"]);
    }

    #[test]
    fn constraint_forces_flip() {
        assert_eq!(all(":- a. a :- not b. b :- not a.", true), vec!["{b}"]);
    }

    #[test]
    fn facts_only() {
        assert_eq!(all("p(1). p(2).", true), vec!["{p(1), p(2)}"]);
    }

    #[test]
    fn odd_loop_is_unsat() {
        assert!(all("a :- not a.", true).is_empty());
    }

    #[test]
    fn positive_loop_is_unfounded() {
        assert_eq!(all("a :- b. b :- a. c :- not a.", true), vec!["{c}"]);
        assert!(all("a :- b. b :- a. :- not a.", true).is_empty());
    }

    #[test]
    fn lazily_grounded_constraint_is_met_by_flipping() {
        let mut s = Solver::new(&load("{a}. :- a.").unwrap(), SolverConfig::default()).unwrap();
        assert_eq!(s.next_answer_set().unwrap().unwrap().to_string(), "{}");
        assert_eq!(s.statistics().decisions, 1);
        assert_eq!(s.statistics().backtracks, 1);
        assert!(s.next_answer_set().unwrap().is_none());
    }

    #[test]
    fn aggregates_count_and_sum() {
        assert_eq!(
            all(
                "{p(1);p(2);p(3)}. q :- 2 <= #count { X : p(X) }. :- not q.",
                false
            )
            .len(),
            4
        );
        assert_eq!(
            sorted(all("{p(1);p(2);p(3)}. :- 4 <= #sum { X : p(X) }.", false)),
            vec!["{p(1), p(2)}", "{p(1)}", "{p(2)}", "{p(3)}", "{}"]
        );
    }

    fn sorted(mut v: Vec<String>) -> Vec<String> {
        v.sort();
        v
    }

    #[test]
    fn decision_limit_interrupts() {
        let cfg = SolverConfig {
            decision_limit: Some(1),
            ..SolverConfig::default()
        };
        let mut s = Solver::new(&load("{a;b;c}. :- not a, not b, not c.").unwrap(), cfg).unwrap();
        while s.next_answer_set().unwrap().is_some() {}
        assert!(s.is_interrupted());
        assert_eq!(s.statistics().decisions, 1);
    }

    #[test]
    fn example_five_decides_b2_first() {
        let src = "x(1..2). {a(X) : x(X)}. b(X) :- x(X), not c(X). \
                   c(X) :- x(X), not b(X). #heuristic b(X) : x(X), not a(X). [X@2]";
        let cfg = SolverConfig {
            trace: true,
            ..SolverConfig::default()
        };
        let mut s = Solver::new(&load(src).unwrap(), cfg).unwrap();
        let m = s.next_answer_set().unwrap().unwrap();
        assert!(m.contains("b(2)"));
        let first = &s.decisions()[0];
        assert_eq!(first.to_string(), "DECIDE b(2)=T dir=1 w=2 l=2");
    }
}
