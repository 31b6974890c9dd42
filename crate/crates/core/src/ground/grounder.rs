//! Semi-naive lazy instantiation of rules and heuristic directives.

use std::collections::HashMap;
use std::ops::Range;
use std::sync::Arc;

use super::compile::{compile, CAtom, CompiledProgram, Join, MatchSet, Slots};
use super::value::{AtomId, AtomStore, GroundAtom, PredId, Value};
use crate::error::{Error, Result};
use crate::frontend::ast::{AggFunction, Program, Sign};

pub const DEFAULT_CAP: usize = 1_000_000;

/// Name of the predicate holding body-representing atoms.
pub const BODY_PREDICATE: &str = "_b";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundRule {
    pub id: usize,
    /// Index of the compiled rule this is an instance of.
    pub source: usize,
    pub head: Option<AtomId>,
    /// Positive body, aggregate node atoms included.
    pub pos: Vec<AtomId>,
    pub neg: Vec<AtomId>,
    /// The choice point β(r); constraints have none.
    pub body_atom: Option<AtomId>,
}

impl GroundRule {
    pub fn is_constraint(&self) -> bool {
        self.head.is_none()
    }
}

/// `not s p(args)` in a ground directive; `None` arguments are wildcards.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NegCondition {
    pub sign: Sign,
    pub atom: GroundAtom,
    pub wildcards: Vec<bool>,
}

impl NegCondition {
    pub fn is_pattern(&self) -> bool {
        self.wildcards.iter().any(|&w| w)
    }

    pub fn matches(&self, atom: &GroundAtom) -> bool {
        atom.pred == self.atom.pred
            && self
                .atom
                .args
                .iter()
                .zip(&self.wildcards)
                .zip(&atom.args)
                .all(|((v, &w), a)| w || v == a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundHeuristicDirective {
    pub id: usize,
    /// Index of the directive in the program.
    pub source: usize,
    pub head_sign: Sign,
    pub head: AtomId,
    pub pos: Vec<(Sign, AtomId)>,
    pub neg: Vec<NegCondition>,
    pub weight: i64,
    pub level: i64,
}

/// Elements and bound-nodes of one aggregate under one binding of its
/// global variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AggGroup {
    pub function: AggFunction,
    pub elements: Vec<(AtomId, i64)>,
    pub nodes: Vec<(AtomId, i64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AggRole {
    Element(usize),
    Node(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Emitted {
    Rule(usize),
    Directive(usize),
}

/// One emission: which object, and whether its positive body (excluding
/// aggregate nodes) lay inside the matched atom sets at that moment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmissionRecord {
    pub what: Emitted,
    pub body_known: bool,
}

/// What one grounding step produced.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Batch {
    pub rules: Range<usize>,
    pub directives: Range<usize>,
    pub atoms: Range<usize>,
    /// Groups that gained elements or nodes.
    pub groups: Vec<usize>,
}

impl Batch {
    pub fn is_empty(&self) -> bool {
        self.rules.is_empty() && self.directives.is_empty() && self.atoms.is_empty()
    }
}

/// Candidate instance that could derive an atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportCandidate {
    pub rule: Option<usize>,
    /// `None` for atoms not interned yet.
    pub pos: Vec<Option<AtomId>>,
    pub neg: Vec<Option<AtomId>>,
}

#[derive(Debug, Default, Clone)]
struct AtomIndex {
    member: Vec<bool>,
    by_pred: HashMap<PredId, Vec<AtomId>>,
    by_arg: HashMap<(PredId, usize, Value), Vec<AtomId>>,
}

impl AtomIndex {
    fn contains(&self, a: AtomId) -> bool {
        self.member.get(a.index()).copied().unwrap_or(false)
    }

    fn insert(&mut self, a: AtomId, atom: &GroundAtom) -> bool {
        if self.contains(a) {
            return false;
        }
        if self.member.len() <= a.index() {
            self.member.resize(a.index() + 1, false);
        }
        self.member[a.index()] = true;
        self.by_pred.entry(atom.pred).or_default().push(a);
        for (i, v) in atom.args.iter().enumerate() {
            self.by_arg
                .entry((atom.pred, i, v.clone()))
                .or_default()
                .push(a);
        }
        true
    }

    fn candidates(&self, pat: &CAtom, s: &Slots) -> &[AtomId] {
        use super::compile::CTerm;
        for (i, t) in pat.args.iter().enumerate() {
            let v = match t {
                CTerm::Val(v) => Some(v),
                CTerm::Var(x) => s[*x].as_ref(),
                _ => None,
            };
            if let Some(v) = v {
                return self
                    .by_arg
                    .get(&(pat.pred, i, v.clone()))
                    .map_or(&[], Vec::as_slice);
            }
        }
        self.by_pred.get(&pat.pred).map_or(&[], Vec::as_slice)
    }
}

#[derive(Debug, Clone, Copy)]
enum Trigger {
    Rule(usize, usize),
    Directive(usize, usize),
}

type Fingerprint = (Option<AtomId>, Vec<AtomId>, Vec<AtomId>);

type DirectiveFingerprint = (
    usize,
    AtomId,
    Vec<(Sign, AtomId)>,
    Vec<NegCondition>,
    i64,
    i64,
);

#[derive(Debug, Clone)]
pub struct Grounder {
    prog: Arc<CompiledProgram>,
    store: AtomStore,
    body_pred: PredId,
    facts: Vec<AtomId>,
    known: AtomIndex,
    false_seen: AtomIndex,
    triggers: HashMap<(PredId, MatchSet), Vec<Trigger>>,
    head_rules: HashMap<PredId, Vec<usize>>,
    closed: HashMap<PredId, bool>,
    rules: Vec<GroundRule>,
    directives: Vec<GroundHeuristicDirective>,
    fingerprints: HashMap<Fingerprint, usize>,
    directive_fingerprints: HashMap<DirectiveFingerprint, usize>,
    bodies: HashMap<(Vec<AtomId>, Vec<AtomId>), AtomId>,
    groups: Vec<AggGroup>,
    group_index: HashMap<(usize, Vec<Value>), usize>,
    roles: HashMap<AtomId, AggRole>,
    support_cache: HashMap<AtomId, Vec<SupportCandidate>>,
    log: Vec<EmissionRecord>,
    cap: usize,
}

impl Grounder {
    pub fn new(p: &Program, cap: usize) -> Result<Grounder> {
        let mut store = AtomStore::new();
        let prog = compile(p, &mut store)?;
        let body_pred = store.predicate(BODY_PREDICATE, 1);
        let mut facts = Vec::new();
        for f in &prog.facts {
            let (id, new) = store.intern(f.clone());
            if new {
                facts.push(id);
            }
        }
        let mut triggers: HashMap<(PredId, MatchSet), Vec<Trigger>> = HashMap::new();
        let mut head_rules: HashMap<PredId, Vec<usize>> = HashMap::new();
        for (ri, r) in prog.rules.iter().enumerate() {
            for (pi, (a, set)) in r.join.atoms.iter().enumerate() {
                triggers
                    .entry((a.pred, *set))
                    .or_default()
                    .push(Trigger::Rule(ri, pi));
            }
            if let Some(h) = &r.head {
                head_rules.entry(h.pred).or_default().push(ri);
            }
        }
        for (di, d) in prog.directives.iter().enumerate() {
            for (pi, (a, set)) in d.join.atoms.iter().enumerate() {
                triggers
                    .entry((a.pred, *set))
                    .or_default()
                    .push(Trigger::Directive(di, pi));
            }
            let fact_pred = prog.facts.iter().any(|f| f.pred == d.head.pred);
            if !head_rules.contains_key(&d.head.pred) && !fact_pred {
                log::warn!(
                    "heuristic head of `{}` matches no rule head; it can never be decided",
                    d.text
                );
            }
        }
        Ok(Grounder {
            prog: Arc::new(prog),
            store,
            body_pred,
            facts,
            known: AtomIndex::default(),
            false_seen: AtomIndex::default(),
            triggers,
            head_rules,
            closed: HashMap::new(),
            rules: Vec::new(),
            directives: Vec::new(),
            fingerprints: HashMap::new(),
            directive_fingerprints: HashMap::new(),
            bodies: HashMap::new(),
            groups: Vec::new(),
            group_index: HashMap::new(),
            roles: HashMap::new(),
            support_cache: HashMap::new(),
            log: Vec::new(),
            cap,
        })
    }

    pub fn store(&self) -> &AtomStore {
        &self.store
    }

    pub fn facts(&self) -> &[AtomId] {
        &self.facts
    }

    pub fn rules(&self) -> &[GroundRule] {
        &self.rules
    }

    pub fn rule(&self, id: usize) -> &GroundRule {
        &self.rules[id]
    }

    pub fn directives(&self) -> &[GroundHeuristicDirective] {
        &self.directives
    }

    pub fn directive(&self, id: usize) -> &GroundHeuristicDirective {
        &self.directives[id]
    }

    pub fn groups(&self) -> &[AggGroup] {
        &self.groups
    }

    pub fn role(&self, a: AtomId) -> Option<AggRole> {
        self.roles.get(&a).copied()
    }

    pub fn is_body_atom(&self, a: AtomId) -> bool {
        self.store.atom(a).pred == self.body_pred
    }

    pub fn is_known(&self, a: AtomId) -> bool {
        self.known.contains(a)
    }

    pub fn emission_log(&self) -> &[EmissionRecord] {
        &self.log
    }

    /// Text of the compiled rule or directive behind a ground object.
    pub fn source_text(&self, what: Emitted) -> &str {
        match what {
            Emitted::Rule(r) => &self.prog.rules[self.rules[r].source].text,
            Emitted::Directive(d) => &self.prog.directives[self.directives[d].source].text,
        }
    }

    /// Grounds everything whose positive body is empty.
    pub fn initial(&mut self) -> Result<Batch> {
        let start = self.mark();
        let prog = Arc::clone(&self.prog);
        let mut groups = Vec::new();
        for (ri, r) in prog.rules.iter().enumerate() {
            if r.join.atoms.is_empty() {
                for (slots, matched) in self.solutions(&r.join, None)? {
                    self.emit_rule(ri, &slots, &matched, &mut groups)?;
                }
            }
        }
        for (di, d) in prog.directives.iter().enumerate() {
            if d.join.atoms.is_empty() {
                for (slots, matched) in self.solutions(&d.join, None)? {
                    self.emit_directive(di, &slots, &matched)?;
                }
            }
        }
        Ok(self.batch(start, groups))
    }

    /// Feeds atoms newly assigned T or M (`known`) and F (`false_seen`) and
    /// grounds every instance that uses at least one of them.
    pub fn ground_new(&mut self, known: &[AtomId], false_seen: &[AtomId]) -> Result<Batch> {
        let start = self.mark();
        let mut seeds = Vec::new();
        for &a in known {
            if self.known.insert(a, self.store.atom(a)) {
                seeds.push((a, MatchSet::Known));
            }
        }
        for &a in false_seen {
            if self.false_seen.insert(a, self.store.atom(a)) {
                seeds.push((a, MatchSet::FalseSeen));
            }
        }
        let prog = Arc::clone(&self.prog);
        let mut groups = Vec::new();
        for (a, set) in seeds {
            let pred = self.store.atom(a).pred;
            let Some(ts) = self.triggers.get(&(pred, set)).cloned() else {
                continue;
            };
            for t in ts {
                match t {
                    Trigger::Rule(ri, pi) => {
                        for (slots, matched) in
                            self.solutions(&prog.rules[ri].join, Some((pi, a)))?
                        {
                            self.emit_rule(ri, &slots, &matched, &mut groups)?;
                        }
                    }
                    Trigger::Directive(di, pi) => {
                        let join = &prog.directives[di].join;
                        for (slots, matched) in self.solutions(join, Some((pi, a)))? {
                            self.emit_directive(di, &slots, &matched)?;
                        }
                    }
                }
            }
        }
        Ok(self.batch(start, groups))
    }

    fn mark(&self) -> (usize, usize, usize) {
        (self.rules.len(), self.directives.len(), self.store.len())
    }

    fn batch(&self, start: (usize, usize, usize), mut groups: Vec<usize>) -> Batch {
        groups.sort_unstable();
        groups.dedup();
        Batch {
            rules: start.0..self.rules.len(),
            directives: start.1..self.directives.len(),
            atoms: start.2..self.store.len(),
            groups,
        }
    }

    fn index(&self, set: MatchSet) -> &AtomIndex {
        match set {
            MatchSet::Known => &self.known,
            MatchSet::FalseSeen => &self.false_seen,
        }
    }

    fn solutions(
        &self,
        join: &Join,
        seed: Option<(usize, AtomId)>,
    ) -> Result<Vec<(Slots, Vec<AtomId>)>> {
        let plan = join.plan(seed.map(|s| s.0));
        let mut slots: Slots = vec![None; join.nvars];
        let mut matched = vec![AtomId(u32::MAX); join.atoms.len()];
        let mut out = Vec::new();
        self.extend(
            join,
            plan,
            seed.map(|s| s.1),
            0,
            &mut slots,
            &mut matched,
            &mut out,
        )?;
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        join: &Join,
        plan: &super::compile::Plan,
        seed: Option<AtomId>,
        k: usize,
        slots: &mut Slots,
        matched: &mut Vec<AtomId>,
        out: &mut Vec<(Slots, Vec<AtomId>)>,
    ) -> Result<()> {
        for &ci in &plan.checks[k] {
            if !join.cmps[ci].holds(slots)? {
                return Ok(());
            }
        }
        if k == plan.order.len() {
            out.push((slots.clone(), matched.clone()));
            return Ok(());
        }
        let ai = plan.order[k];
        let (pat, set) = &join.atoms[ai];
        let seeded;
        let cands: &[AtomId] = match seed {
            Some(a) if k == 0 => {
                seeded = [a];
                &seeded
            }
            _ => self.index(*set).candidates(pat, slots),
        };
        let mut bound = Vec::new();
        for &a in cands {
            if pat.unify(self.store.atom(a), slots, &mut bound) {
                matched[ai] = a;
                self.extend(join, plan, seed, k + 1, slots, matched, out)?;
            }
            for v in bound.drain(..) {
                slots[v] = None;
            }
        }
        Ok(())
    }

    fn check_cap(&self) -> Result<()> {
        if self.rules.len() + self.directives.len() > self.cap {
            return Err(Error::TooLarge(format!(
                "grounding exceeds the cap of {} ground rules",
                self.cap
            )));
        }
        Ok(())
    }

    fn emit_rule(
        &mut self,
        ri: usize,
        slots: &Slots,
        matched: &[AtomId],
        groups: &mut Vec<usize>,
    ) -> Result<()> {
        let prog = Arc::clone(&self.prog);
        let r = &prog.rules[ri];
        let body_known = matched.iter().all(|&a| self.known.contains(a));
        let mut pos: Vec<AtomId> = matched.to_vec();
        for (def, node) in &r.nodes {
            let atom = node.ground(slots)?;
            let nglobals = prog.aggs[*def].nglobals;
            let bound = match atom.args[nglobals] {
                Value::Int(k) => k,
                ref v => {
                    return Err(Error::Eval(format!(
                        "aggregate bound `{v}` is not an integer in `{}`",
                        r.text
                    )))
                }
            };
            let key = (*def, atom.args[..nglobals].to_vec());
            let (id, new) = self.store.intern(atom);
            if new {
                let g = self.group(key);
                self.groups[g].nodes.push((id, bound));
                self.roles.insert(id, AggRole::Node(g));
                groups.push(g);
            }
            pos.push(id);
        }
        let mut neg = Vec::with_capacity(r.neg.len());
        for a in &r.neg {
            let atom = a.ground(slots)?;
            neg.push(self.store.intern(atom).0);
        }
        let mut spos = pos.clone();
        spos.sort_unstable();
        spos.dedup();
        let mut sneg = neg.clone();
        sneg.sort_unstable();
        sneg.dedup();

        let heads: Vec<Option<GroundAtom>> = match &r.head {
            Some(h) => h.ground_all(slots)?.into_iter().map(Some).collect(),
            None => vec![None],
        };
        for head in heads {
            let head_id = match head {
                Some(atom) => {
                    let element_key = r.element_of.map(|def| {
                        let n = prog.aggs[def].nglobals;
                        let w = match prog.aggs[def].function {
                            AggFunction::Count => Ok(1),
                            AggFunction::Sum => match atom.args.get(n) {
                                Some(Value::Int(w)) if *w >= 0 => Ok(*w),
                                other => Err(Error::Eval(format!(
                                    "#sum weight {} is not a non-negative integer",
                                    other.map_or("<none>".to_string(), Value::to_string)
                                ))),
                            },
                        };
                        (def, atom.args[..n].to_vec(), w)
                    });
                    let (id, new) = self.store.intern(atom);
                    if let Some((def, globals, w)) = element_key {
                        let w = w?;
                        if new || !self.roles.contains_key(&id) {
                            let g = self.group((def, globals));
                            self.groups[g].elements.push((id, w));
                            self.roles.insert(id, AggRole::Element(g));
                            groups.push(g);
                        }
                    }
                    Some(id)
                }
                None => None,
            };
            let fp = (head_id, spos.clone(), sneg.clone());
            if self.fingerprints.contains_key(&fp) {
                continue;
            }
            let body_atom = head_id.map(|_| self.body_atom(&spos, &sneg));
            let id = self.rules.len();
            self.fingerprints.insert(fp, id);
            self.rules.push(GroundRule {
                id,
                source: ri,
                head: head_id,
                pos: pos.clone(),
                neg: neg.clone(),
                body_atom,
            });
            self.log.push(EmissionRecord {
                what: Emitted::Rule(id),
                body_known,
            });
            self.check_cap()?;
        }
        Ok(())
    }

    fn body_atom(&mut self, pos: &[AtomId], neg: &[AtomId]) -> AtomId {
        let key = (pos.to_vec(), neg.to_vec());
        if let Some(&b) = self.bodies.get(&key) {
            return b;
        }
        let n = self.bodies.len() as i64;
        let (id, _) = self.store.intern(GroundAtom {
            pred: self.body_pred,
            args: vec![Value::Int(n)],
        });
        self.bodies.insert(key, id);
        id
    }

    fn group(&mut self, key: (usize, Vec<Value>)) -> usize {
        if let Some(&g) = self.group_index.get(&key) {
            return g;
        }
        let g = self.groups.len();
        self.groups.push(AggGroup {
            function: self.prog.aggs[key.0].function,
            elements: Vec::new(),
            nodes: Vec::new(),
        });
        self.group_index.insert(key, g);
        g
    }

    fn emit_directive(&mut self, di: usize, slots: &Slots, matched: &[AtomId]) -> Result<()> {
        let prog = Arc::clone(&self.prog);
        let d = &prog.directives[di];
        let body_known = matched
            .iter()
            .zip(&d.join.atoms)
            .all(|(&a, (_, set))| self.index(*set).contains(a));
        let int = |v: Value, what: &str| match v {
            Value::Int(i) => Ok(i),
            other => Err(Error::Eval(format!(
                "heuristic {what} `{other}` is not an integer in `{}`",
                d.text
            ))),
        };
        let weight = int(d.weight.eval(slots)?, "weight")?;
        let level = int(d.level.eval(slots)?, "level")?;
        let head = self.store.intern(d.head.ground(slots)?).0;
        let pos: Vec<(Sign, AtomId)> = d
            .pos_signs
            .iter()
            .copied()
            .zip(matched.iter().copied())
            .collect();
        let mut neg = Vec::with_capacity(d.neg.len());
        for (sign, a) in &d.neg {
            let pattern = a.pattern(slots)?;
            let wildcards = pattern.iter().map(Option::is_none).collect();
            let args = pattern
                .into_iter()
                .map(|v| v.unwrap_or(Value::Int(0)))
                .collect();
            neg.push(NegCondition {
                sign: *sign,
                atom: GroundAtom { pred: a.pred, args },
                wildcards,
            });
        }
        let fp = (di, head, pos.clone(), neg.clone(), weight, level);
        if self.directive_fingerprints.contains_key(&fp) {
            return Ok(());
        }
        let id = self.directives.len();
        self.directive_fingerprints.insert(fp, id);
        self.directives.push(GroundHeuristicDirective {
            id,
            source: di,
            head_sign: d.head_sign,
            head,
            pos,
            neg,
            weight,
            level,
        });
        self.log.push(EmissionRecord {
            what: Emitted::Directive(id),
            body_known,
        });
        self.check_cap()
    }

    fn is_closed(&mut self, pred: PredId) -> bool {
        if let Some(&c) = self.closed.get(&pred) {
            return c;
        }
        let is_node = self.prog.aggs.iter().any(|a| a.node_pred == pred);
        let c = !is_node
            && pred != self.body_pred
            && self.head_rules.get(&pred).is_none_or(|rs| {
                rs.iter()
                    .all(|&r| self.prog.rules[r].head_determines_body())
            });
        self.closed.insert(pred, c);
        c
    }

    /// Every instance that could ever derive `a`, or `None` when they cannot
    /// be enumerated from the atom alone.
    pub fn support_candidates(&mut self, a: AtomId) -> Option<Vec<SupportCandidate>> {
        if let Some(c) = self.support_cache.get(&a) {
            return Some(c.clone());
        }
        let atom = self.store.atom(a).clone();
        if !self.is_closed(atom.pred) {
            return None;
        }
        let prog = Arc::clone(&self.prog);
        let mut out = Vec::new();
        for &ri in self
            .head_rules
            .get(&atom.pred)
            .map_or(&[][..], Vec::as_slice)
        {
            let r = &prog.rules[ri];
            let mut slots: Slots = vec![None; r.nvars];
            let mut bound = Vec::new();
            if !r
                .head
                .as_ref()
                .expect("head")
                .unify(&atom, &mut slots, &mut bound)
            {
                continue;
            }
            if !r.join.cmps.iter().all(|c| c.holds(&slots).unwrap_or(false)) {
                continue;
            }
            let lookup = |c: &CAtom| c.ground(&slots).ok().and_then(|g| self.store.get(&g));
            let mut pos: Vec<Option<AtomId>> =
                r.join.atoms.iter().map(|(c, _)| lookup(c)).collect();
            pos.extend(r.nodes.iter().map(|(_, c)| lookup(c)));
            let neg: Vec<Option<AtomId>> = r.neg.iter().map(lookup).collect();
            let rule = match (
                pos.iter().copied().collect::<Option<Vec<_>>>(),
                neg.iter().copied().collect::<Option<Vec<_>>>(),
            ) {
                (Some(mut p), Some(mut n)) => {
                    p.sort_unstable();
                    p.dedup();
                    n.sort_unstable();
                    n.dedup();
                    self.fingerprints.get(&(Some(a), p, n)).copied()
                }
                _ => None,
            };
            out.push(SupportCandidate { rule, pos, neg });
        }
        if out.iter().all(|c| c.rule.is_some()) {
            self.support_cache.insert(a, out.clone());
        }
        Some(out)
    }

    /// Printable form of a ground rule, e.g. `b(2) :- x(2), not c(2).`
    pub fn format_rule(&self, r: &GroundRule) -> String {
        let mut body: Vec<String> = r.pos.iter().map(|&a| self.store.display(a)).collect();
        body.extend(
            r.neg
                .iter()
                .map(|&a| format!("not {}", self.store.display(a))),
        );
        let head = r.head.map(|h| self.store.display(h));
        match (head, body.is_empty()) {
            (Some(h), true) => format!("{h}."),
            (Some(h), false) => format!("{h} :- {}.", body.join(", ")),
            (None, _) => format!(":- {}.", body.join(", ")),
        }
    }

    /// Printable heuristic rule, e.g. `_h(b(2), 2, 2, true) :- x(2), not a(2).`
    pub fn format_directive(&self, d: &GroundHeuristicDirective) -> String {
        let mut body: Vec<String> = d
            .pos
            .iter()
            .map(|(s, a)| format!("{}{}", s.prefix(), self.store.display(*a)))
            .collect();
        for n in &d.neg {
            let args: Vec<String> = n
                .atom
                .args
                .iter()
                .zip(&n.wildcards)
                .map(|(v, &w)| if w { "_".to_string() } else { v.to_string() })
                .collect();
            let name = &self.store.pred(n.atom.pred).name;
            let atom = if args.is_empty() {
                name.to_string()
            } else {
                format!("{name}({})", args.join(","))
            };
            body.push(format!("not {}{atom}", n.sign.prefix()));
        }
        let head = format!(
            "_h({}, {}, {}, {})",
            self.store.display(d.head),
            d.weight,
            d.level,
            d.head_sign.head_polarity()
        );
        if body.is_empty() {
            format!("{head}.")
        } else {
            format!("{head} :- {}.", body.join(", "))
        }
    }
}

/// Grounds every instance whose positive body could ever become true: the
/// fixpoint of lazy grounding when every atom that appears is treated as
/// both known and false-seen.
pub fn full_grounding(p: &Program, cap: usize) -> Result<Grounder> {
    let mut g = Grounder::new(p, cap)?;
    g.initial()?;
    let mut next = 0usize;
    while next < g.store.len() {
        let end = g.store.len();
        let delta: Vec<AtomId> = (next..end)
            .map(|i| AtomId(i as u32))
            .filter(|&a| !g.is_body_atom(a))
            .collect();
        g.ground_new(&delta, &delta)?;
        next = end;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::load;

    const EXAMPLE5: &str = "x(1..2). {a(X) : x(X)}. b(X) :- x(X), not c(X). \
                            c(X) :- x(X), not b(X). #heuristic b(X) : x(X), not a(X). [X@2]";

    fn lazy(src: &str) -> Grounder {
        let mut g = Grounder::new(&load(src).unwrap(), DEFAULT_CAP).unwrap();
        g.initial().unwrap();
        g
    }

    #[test]
    fn example5_facts_ground_everything() {
        let mut g = lazy(EXAMPLE5);
        let facts = g.facts().to_vec();
        assert_eq!(facts.len(), 2);
        let b = g.ground_new(&facts, &[]).unwrap();
        assert_eq!(b.rules.len(), 8);
        assert_eq!(b.directives.len(), 2);
        let shown: Vec<_> = g
            .directives()
            .iter()
            .map(|d| g.format_directive(d))
            .collect();
        assert_eq!(
            shown,
            vec![
                "_h(b(1), 1, 2, true) :- x(1), not a(1).",
                "_h(b(2), 2, 2, true) :- x(2), not a(2)."
            ]
        );
    }

    #[test]
    fn empty_delta_grounds_nothing() {
        let mut g = lazy(EXAMPLE5);
        assert!(g.ground_new(&[], &[]).unwrap().is_empty());
    }

    #[test]
    fn rule_without_matches() {
        let g = full_grounding(&load("p(X) :- q(X).").unwrap(), DEFAULT_CAP).unwrap();
        assert!(g.rules().is_empty());
    }

    #[test]
    fn example1_choice_compiles_to_ten_rules() {
        let g = full_grounding(&load("{a(2);a(4);a(6);a(8);a(5)}.").unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(g.rules().len(), 10);
    }

    #[test]
    fn example5_full_matches_lazy() {
        let mut l = lazy(EXAMPLE5);
        let facts = l.facts().to_vec();
        l.ground_new(&facts, &[]).unwrap();
        let f = full_grounding(&load(EXAMPLE5).unwrap(), DEFAULT_CAP).unwrap();
        let lr: Vec<_> = l.rules().iter().map(|r| l.format_rule(r)).collect();
        let fr: Vec<_> = f.rules().iter().map(|r| f.format_rule(r)).collect();
        assert_eq!(lr, fr);
        assert_eq!(l.directives().len(), f.directives().len());
    }

    #[test]
    fn false_seen_grounds_minus_conditions() {
        let mut g = lazy("{a(4);a(5);a(6)}. #heuristic a(6) : -a(5), +a(4). [2]");
        let a4 = g.store().get(&GroundAtom {
            pred: g.store().lookup_predicate("a", 1).unwrap(),
            args: vec![Value::Int(4)],
        });
        let a5 = g.store().get(&GroundAtom {
            pred: g.store().lookup_predicate("a", 1).unwrap(),
            args: vec![Value::Int(5)],
        });
        let (a4, a5) = (a4.unwrap(), a5.unwrap());
        assert!(g.ground_new(&[a4], &[]).unwrap().directives.is_empty());
        let b = g.ground_new(&[], &[a5]).unwrap();
        assert_eq!(b.directives.len(), 1);
        assert!(g.emission_log().iter().all(|e| e.body_known));
    }

    #[test]
    fn interval_heads_expand() {
        let g =
            full_grounding(&load("bcap(3). d(0..C) :- bcap(C).").unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(g.rules().len(), 4);
    }

    #[test]
    fn cap_is_enforced() {
        let err =
            full_grounding(&load("n(1..50). p(X,Y) :- n(X), n(Y).").unwrap(), 100).unwrap_err();
        assert_eq!(err.code(), "E_TOO_LARGE");
    }

    #[test]
    fn bodies_share_choice_points() {
        let g = full_grounding(&load("q. a :- q. b :- q.").unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(g.rules()[0].body_atom, g.rules()[1].body_atom);
    }

    #[test]
    fn aggregates_form_groups() {
        let g = full_grounding(
            &load("p(1). p(2). q :- 2 <= #count { X : p(X) }.").unwrap(),
            DEFAULT_CAP,
        )
        .unwrap();
        assert_eq!(g.groups().len(), 1);
        assert_eq!(g.groups()[0].elements.len(), 2);
        assert_eq!(g.groups()[0].nodes.len(), 1);
    }

    #[test]
    fn support_candidates_for_closed_atoms() {
        let mut g = full_grounding(&load(EXAMPLE5).unwrap(), DEFAULT_CAP).unwrap();
        let b2 = g
            .store()
            .get(&GroundAtom {
                pred: g.store().lookup_predicate("b", 1).unwrap(),
                args: vec![Value::Int(2)],
            })
            .unwrap();
        let c = g.support_candidates(b2).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c[0].rule.is_some());
    }
}
