//! Three-valued partial assignment with a trail and decision levels.

use std::collections::BTreeSet;
use std::fmt;

use crate::frontend::ast::Sign;
use crate::ground::AtomId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruthValue {
    T,
    F,
    /// Must be true: forced true without a firing rule yet.
    M,
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TruthValue::T => "T",
            TruthValue::F => "F",
            TruthValue::M => "M",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    Decision,
    Fact,
    Rule(usize),
    Constraint(usize),
    Agg,
    Support,
    Closure,
    Flip,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::Decision => write!(f, "decision"),
            Reason::Fact => write!(f, "fact"),
            Reason::Rule(r) => write!(f, "rule:{r}"),
            Reason::Constraint(r) => write!(f, "constraint:{r}"),
            Reason::Agg => write!(f, "agg"),
            Reason::Support => write!(f, "support"),
            Reason::Closure => write!(f, "closure"),
            Reason::Flip => write!(f, "flip"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssignOutcome {
    Ok,
    /// M became T.
    Promoted,
    /// The atom already had this value (or T when M was asked for).
    Unchanged,
    Conflict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrailEntry {
    pub atom: AtomId,
    pub old: Option<TruthValue>,
    pub new: TruthValue,
    pub reason: Reason,
    pub level: u32,
}

#[derive(Debug, Clone, Default)]
pub struct PartialAssignment {
    values: Vec<Option<TruthValue>>,
    levels: Vec<u32>,
    trail: Vec<TrailEntry>,
    /// Trail length at the moment each level above 0 was opened.
    level_starts: Vec<usize>,
}

impl PartialAssignment {
    pub fn new() -> PartialAssignment {
        PartialAssignment::default()
    }

    /// Makes room for atom ids below `n`.
    pub fn grow(&mut self, n: usize) {
        if self.values.len() < n {
            self.values.resize(n, None);
            self.levels.resize(n, 0);
        }
    }

    pub fn value(&self, a: AtomId) -> Option<TruthValue> {
        self.values.get(a.index()).copied().flatten()
    }

    pub fn is_assigned(&self, a: AtomId) -> bool {
        self.value(a).is_some()
    }

    /// Level at which the atom got its current value.
    pub fn level_of(&self, a: AtomId) -> u32 {
        self.levels.get(a.index()).copied().unwrap_or(0)
    }

    pub fn current_level(&self) -> u32 {
        self.level_starts.len() as u32
    }

    pub fn trail(&self) -> &[TrailEntry] {
        &self.trail
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn new_level(&mut self) -> u32 {
        self.level_starts.push(self.trail.len());
        self.current_level()
    }

    pub fn assign(&mut self, a: AtomId, v: TruthValue, reason: Reason) -> AssignOutcome {
        use TruthValue::*;
        self.grow(a.index() + 1);
        let old = self.values[a.index()];
        let outcome = match (old, v) {
            (None, _) => AssignOutcome::Ok,
            (Some(M), T) => AssignOutcome::Promoted,
            (Some(x), y) if x == y => return AssignOutcome::Unchanged,
            (Some(T), M) => return AssignOutcome::Unchanged,
            _ => return AssignOutcome::Conflict,
        };
        let level = self.current_level();
        self.values[a.index()] = Some(v);
        self.levels[a.index()] = level;
        self.trail.push(TrailEntry {
            atom: a,
            old,
            new: v,
            reason,
            level,
        });
        outcome
    }

    /// Undoes every assignment made above `level`; returns the atoms whose
    /// value changed, most recent first.
    pub fn backtrack_to(&mut self, level: u32) -> Vec<AtomId> {
        let mut changed = Vec::new();
        if level >= self.current_level() {
            return changed;
        }
        let start = self.level_starts[level as usize];
        while self.trail.len() > start {
            let e = self.trail.pop().expect("non-empty trail");
            self.values[e.atom.index()] = e.old;
            if e.old.is_some() {
                // Only promotions keep a value; the M was set earlier.
                let prior = self.trail.iter().rev().find(|p| p.atom == e.atom);
                self.levels[e.atom.index()] = prior.map_or(0, |p| p.level);
            }
            changed.push(e.atom);
        }
        self.level_starts.truncate(level as usize);
        changed
    }

    pub fn project(&self) -> SignedProjection<'_> {
        SignedProjection { a: self }
    }
}

/// The signed view A± = {-a | Fa} ∪ {a | Ma or Ta} ∪ {+a | Ta}.
#[derive(Debug, Clone, Copy)]
pub struct SignedProjection<'a> {
    a: &'a PartialAssignment,
}

impl SignedProjection<'_> {
    /// `a ∈ A±`
    pub fn sat_plain(&self, a: AtomId) -> bool {
        matches!(self.a.value(a), Some(TruthValue::M | TruthValue::T))
    }

    /// `+a ∈ A±`
    pub fn sat_pos(&self, a: AtomId) -> bool {
        self.a.value(a) == Some(TruthValue::T)
    }

    /// `-a ∈ A±`
    pub fn sat_neg(&self, a: AtomId) -> bool {
        self.a.value(a) == Some(TruthValue::F)
    }

    pub fn contains(&self, sign: Sign, a: AtomId) -> bool {
        match sign {
            Sign::Empty => self.sat_plain(a),
            Sign::Plus => self.sat_pos(a),
            Sign::Minus => self.sat_neg(a),
        }
    }

    /// The projection as an explicit set of signed atoms.
    pub fn to_set(&self) -> BTreeSet<(Sign, AtomId)> {
        let mut out = BTreeSet::new();
        for i in 0..self.a.len() {
            let a = AtomId(i as u32);
            for s in [Sign::Empty, Sign::Plus, Sign::Minus] {
                if self.contains(s, a) {
                    out.insert((s, a));
                }
            }
        }
        out
    }
}
