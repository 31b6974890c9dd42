//! Rules and directives compiled into slot-indexed patterns for matching.
//!
//! Variables become slot numbers. Arithmetic inside positive atoms is moved
//! into an equality test on a fresh variable, and every body aggregate is
//! replaced by an internal node atom whose elements are derived by separate
//! element rules.

use std::collections::{BTreeSet, HashMap};

use super::builtin::{apply_op, compare, negate};
use super::value::{AtomStore, GroundAtom, PredId, Value};
use crate::error::{Error, Result};
use crate::frontend::ast::*;
use crate::frontend::directive_to_heuristic_rule;

pub type Slots = Vec<Option<Value>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CTerm {
    Val(Value),
    Var(usize),
    /// Wildcard; only inside negative directive conditions.
    Anon,
    Op(BinOp, Box<CTerm>, Box<CTerm>),
    Neg(Box<CTerm>),
    Interval(Box<CTerm>, Box<CTerm>),
}

impl CTerm {
    pub fn eval(&self, s: &Slots) -> Result<Value> {
        match self {
            CTerm::Val(v) => Ok(v.clone()),
            CTerm::Var(i) => s[*i]
                .clone()
                .ok_or_else(|| Error::Eval(format!("unbound variable slot {i}"))),
            CTerm::Anon => Err(Error::Eval("anonymous variable has no value".into())),
            CTerm::Op(op, a, b) => apply_op(*op, &a.eval(s)?, &b.eval(s)?),
            CTerm::Neg(a) => negate(&a.eval(s)?),
            CTerm::Interval(..) => Err(Error::Eval(
                "interval where a single value is required".into(),
            )),
        }
    }

    pub fn eval_values(&self, s: &Slots) -> Result<Vec<Value>> {
        match self {
            CTerm::Interval(lo, hi) => match (lo.eval(s)?, hi.eval(s)?) {
                (Value::Int(l), Value::Int(h)) => Ok((l..=h).map(Value::Int).collect()),
                (l, h) => Err(Error::Eval(format!(
                    "interval bounds `{l}..{h}` are not integers"
                ))),
            },
            _ => Ok(vec![self.eval(s)?]),
        }
    }

    fn collect_vars(&self, out: &mut Vec<usize>) {
        match self {
            CTerm::Var(i) => {
                if !out.contains(i) {
                    out.push(*i)
                }
            }
            CTerm::Op(_, a, b) | CTerm::Interval(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            CTerm::Neg(a) => a.collect_vars(out),
            CTerm::Val(_) | CTerm::Anon => {}
        }
    }

    fn is_simple(&self) -> bool {
        matches!(self, CTerm::Val(_) | CTerm::Var(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CAtom {
    pub pred: PredId,
    pub args: Vec<CTerm>,
}

impl CAtom {
    pub fn ground(&self, s: &Slots) -> Result<GroundAtom> {
        Ok(GroundAtom {
            pred: self.pred,
            args: self.args.iter().map(|t| t.eval(s)).collect::<Result<_>>()?,
        })
    }

    /// Every ground atom denoted under `s`, expanding intervals.
    pub fn ground_all(&self, s: &Slots) -> Result<Vec<GroundAtom>> {
        let mut combos: Vec<Vec<Value>> = vec![vec![]];
        for t in &self.args {
            let vals = t.eval_values(s)?;
            combos = combos
                .into_iter()
                .flat_map(|prefix| {
                    vals.iter().map(move |v| {
                        let mut next = prefix.clone();
                        next.push(v.clone());
                        next
                    })
                })
                .collect();
        }
        Ok(combos
            .into_iter()
            .map(|args| GroundAtom {
                pred: self.pred,
                args,
            })
            .collect())
    }

    /// Ground arguments with `None` for wildcards.
    pub fn pattern(&self, s: &Slots) -> Result<Vec<Option<Value>>> {
        self.args
            .iter()
            .map(|t| match t {
                CTerm::Anon => Ok(None),
                t => t.eval(s).map(Some),
            })
            .collect()
    }

    /// Matches a ground atom, binding free slots. Newly bound slots are pushed
    /// to `bound` so the caller can undo them. Arguments must be simple.
    pub fn unify(&self, atom: &GroundAtom, s: &mut Slots, bound: &mut Vec<usize>) -> bool {
        if atom.pred != self.pred {
            return false;
        }
        for (t, v) in self.args.iter().zip(&atom.args) {
            match t {
                CTerm::Val(c) => {
                    if c != v {
                        return false;
                    }
                }
                CTerm::Var(i) => match &s[*i] {
                    Some(cur) => {
                        if cur != v {
                            return false;
                        }
                    }
                    None => {
                        s[*i] = Some(v.clone());
                        bound.push(*i);
                    }
                },
                _ => return false,
            }
        }
        true
    }

    pub fn vars(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for t in &self.args {
            t.collect_vars(&mut out);
        }
        out
    }

    fn is_simple(&self) -> bool {
        self.args.iter().all(CTerm::is_simple)
    }
}

#[derive(Debug, Clone)]
pub struct CCmp {
    pub lhs: CTerm,
    pub op: CmpOp,
    pub rhs: CTerm,
    vars: Vec<usize>,
}

impl CCmp {
    fn new(lhs: CTerm, op: CmpOp, rhs: CTerm) -> CCmp {
        let mut vars = Vec::new();
        lhs.collect_vars(&mut vars);
        rhs.collect_vars(&mut vars);
        CCmp { lhs, op, rhs, vars }
    }

    pub fn holds(&self, s: &Slots) -> Result<bool> {
        Ok(compare(self.op, &self.lhs.eval(s)?, &self.rhs.eval(s)?))
    }
}

/// Which set of atoms a positive pattern is matched against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatchSet {
    /// Atoms ever assigned T or M.
    Known,
    /// Atoms ever assigned F; used by `-a` directive conditions.
    FalseSeen,
}

/// Conjunction of positive patterns and comparisons with precomputed join
/// orders, one per choice of seed atom.
#[derive(Debug, Clone)]
pub struct Join {
    pub atoms: Vec<(CAtom, MatchSet)>,
    pub cmps: Vec<CCmp>,
    pub nvars: usize,
    plans: Vec<Plan>,
}

#[derive(Debug, Clone)]
pub struct Plan {
    pub order: Vec<usize>,
    /// `checks[k]` holds comparisons that become decidable after the first
    /// `k` atoms of `order` are matched.
    pub checks: Vec<Vec<usize>>,
}

impl Join {
    fn new(atoms: Vec<(CAtom, MatchSet)>, cmps: Vec<CCmp>, nvars: usize) -> Join {
        let n = atoms.len();
        let mut plans = Vec::with_capacity(n + 1);
        for seed in 0..=n {
            let mut order = Vec::with_capacity(n);
            if seed < n {
                order.push(seed);
            }
            order.extend((0..n).filter(|&i| i != seed));
            let mut bound: Vec<bool> = vec![false; nvars];
            let mut done = vec![false; cmps.len()];
            let mut checks = Vec::with_capacity(n + 1);
            for k in 0..=n {
                if k > 0 {
                    for v in atoms[order[k - 1]].0.vars() {
                        bound[v] = true;
                    }
                }
                let mut ready = Vec::new();
                for (ci, c) in cmps.iter().enumerate() {
                    if !done[ci] && (k == n || c.vars.iter().all(|&v| bound[v])) {
                        done[ci] = true;
                        ready.push(ci);
                    }
                }
                checks.push(ready);
            }
            plans.push(Plan { order, checks });
        }
        Join {
            atoms,
            cmps,
            nvars,
            plans,
        }
    }

    /// Plan seeded on atom `seed`, or the textual order when `None`.
    pub fn plan(&self, seed: Option<usize>) -> &Plan {
        &self.plans[seed.unwrap_or(self.atoms.len())]
    }
}

#[derive(Debug, Clone)]
pub struct CompiledRule {
    pub text: String,
    pub head: Option<CAtom>,
    pub join: Join,
    pub neg: Vec<CAtom>,
    /// Aggregate node atoms of the body; arguments are globals then bound.
    pub nodes: Vec<(usize, CAtom)>,
    /// Set when this rule derives elements of an aggregate definition.
    pub element_of: Option<usize>,
    pub nvars: usize,
}

impl CompiledRule {
    /// True when a ground head fixes every variable of the rule, so at most
    /// one instance can derive a given atom.
    pub fn head_determines_body(&self) -> bool {
        let Some(h) = &self.head else { return false };
        if !h.is_simple() {
            return false;
        }
        let hv = h.vars();
        (0..self.nvars).all(|v| hv.contains(&v))
    }
}

#[derive(Debug, Clone)]
pub struct AggDef {
    pub function: AggFunction,
    pub node_pred: PredId,
    pub nglobals: usize,
}

#[derive(Debug, Clone)]
pub struct CompiledDirective {
    pub text: String,
    pub head_sign: Sign,
    pub head: CAtom,
    /// Positive condition; `pos_signs[i]` belongs to `join.atoms[i]`.
    pub join: Join,
    pub pos_signs: Vec<Sign>,
    pub neg: Vec<(Sign, CAtom)>,
    pub weight: CTerm,
    pub level: CTerm,
}

#[derive(Debug, Clone, Default)]
pub struct CompiledProgram {
    pub facts: Vec<GroundAtom>,
    pub rules: Vec<CompiledRule>,
    pub directives: Vec<CompiledDirective>,
    pub aggs: Vec<AggDef>,
}

struct Vars {
    names: Vec<String>,
    index: HashMap<String, usize>,
    temps: usize,
}

impl Vars {
    fn new() -> Vars {
        Vars {
            names: Vec::new(),
            index: HashMap::new(),
            temps: 0,
        }
    }

    fn slot(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        i
    }

    fn fresh(&mut self) -> usize {
        loop {
            let name = format!("_T{}", self.temps);
            self.temps += 1;
            if !self.index.contains_key(&name) {
                return self.slot(&name);
            }
        }
    }
}

fn cterm(t: &Term, vars: &mut Vars) -> CTerm {
    match t {
        Term::Int(i) => CTerm::Val(Value::Int(*i)),
        Term::Sym(s) => CTerm::Val(Value::sym(s)),
        Term::Var(v) => CTerm::Var(vars.slot(v)),
        Term::Anon => CTerm::Anon,
        Term::BinOp(op, a, b) => CTerm::Op(*op, Box::new(cterm(a, vars)), Box::new(cterm(b, vars))),
        Term::Neg(a) => CTerm::Neg(Box::new(cterm(a, vars))),
        Term::Interval(a, b) => CTerm::Interval(Box::new(cterm(a, vars)), Box::new(cterm(b, vars))),
    }
}

fn catom(a: &Atom, vars: &mut Vars, store: &mut AtomStore) -> CAtom {
    CAtom {
        pred: store.predicate(&a.predicate, a.arity()),
        args: a.args.iter().map(|t| cterm(t, vars)).collect(),
    }
}

/// Compiles a positive atom so that every argument is a constant or a
/// variable; compound arguments become `_Tn = expr` tests.
fn positive_catom(a: &Atom, vars: &mut Vars, store: &mut AtomStore, cmps: &mut Vec<CCmp>) -> CAtom {
    let mut ca = catom(a, vars, store);
    for arg in ca.args.iter_mut() {
        if !arg.is_simple() {
            let slot = vars.fresh();
            let expr = std::mem::replace(arg, CTerm::Var(slot));
            cmps.push(CCmp::new(CTerm::Var(slot), CmpOp::Eq, expr));
        }
    }
    ca
}

struct Compiler<'a> {
    store: &'a mut AtomStore,
    out: CompiledProgram,
    agg_keys: HashMap<String, usize>,
}

pub fn compile(p: &Program, store: &mut AtomStore) -> Result<CompiledProgram> {
    let mut c = Compiler {
        store,
        out: CompiledProgram::default(),
        agg_keys: HashMap::new(),
    };
    for rule in &p.rules {
        if rule.body.is_empty() {
            if let Head::Atom(a) = &rule.head {
                let ca = catom(a, &mut Vars::new(), c.store);
                let facts = ca.ground_all(&Vec::new())?;
                c.out.facts.extend(facts);
                continue;
            }
        }
        c.rule(rule, None)?;
    }
    for d in &p.directives {
        c.directive(d)?;
    }
    Ok(c.out)
}

impl Compiler<'_> {
    fn rule(&mut self, rule: &Rule, element_of: Option<usize>) -> Result<()> {
        let body = self.extract_aggregates(rule)?;
        let text = rule.to_string();
        let mut vars = Vars::new();
        let mut atoms = Vec::new();
        let mut cmps = Vec::new();
        let mut neg = Vec::new();
        let mut nodes = Vec::new();
        for lit in &body {
            match lit {
                BodyItem::Pos(a) => {
                    let ca = positive_catom(a, &mut vars, self.store, &mut cmps);
                    atoms.push((ca, MatchSet::Known));
                }
                BodyItem::Neg(a) => neg.push(catom(a, &mut vars, self.store)),
                BodyItem::Cmp(cmp) => cmps.push(CCmp::new(
                    cterm(&cmp.lhs, &mut vars),
                    cmp.op,
                    cterm(&cmp.rhs, &mut vars),
                )),
                BodyItem::Node(def, a) => nodes.push((*def, catom(a, &mut vars, self.store))),
            }
        }
        let head = match &rule.head {
            Head::Atom(a) => Some(catom(a, &mut vars, self.store)),
            Head::None => None,
            Head::Choice(_) => {
                return Err(Error::Unsupported(
                    "choice head reached the grounder unnormalized".into(),
                ))
            }
        };
        let nvars = vars.names.len();
        self.out.rules.push(CompiledRule {
            text,
            head,
            join: Join::new(atoms, cmps, nvars),
            neg,
            nodes,
            element_of,
            nvars,
        });
        Ok(())
    }

    /// Replaces each aggregate by a node atom and compiles its element rules.
    fn extract_aggregates(&mut self, rule: &Rule) -> Result<Vec<BodyItem>> {
        let mut items = Vec::new();
        for (i, lit) in rule.body.iter().enumerate() {
            let agg = match lit {
                Literal::Pos(a) => {
                    items.push(BodyItem::Pos(a.clone()));
                    continue;
                }
                Literal::Neg(a) => {
                    items.push(BodyItem::Neg(a.clone()));
                    continue;
                }
                Literal::Cmp(c) => {
                    items.push(BodyItem::Cmp(c.clone()));
                    continue;
                }
                Literal::Agg(agg) => agg,
            };
            let mut outer = BTreeSet::new();
            match &rule.head {
                Head::Atom(a) => a.collect_vars(&mut outer),
                Head::Choice(_) | Head::None => {}
            }
            for (j, other) in rule.body.iter().enumerate() {
                if i == j {
                    continue;
                }
                match other {
                    Literal::Pos(a) | Literal::Neg(a) => a.collect_vars(&mut outer),
                    Literal::Cmp(c) => c.collect_vars(&mut outer),
                    Literal::Agg(o) => {
                        o.lower_bound.collect_vars(&mut outer);
                        for e in &o.elements {
                            collect_element_vars(e, &mut outer);
                        }
                    }
                }
            }
            agg.lower_bound.collect_vars(&mut outer);
            let mut inner = BTreeSet::new();
            for e in &agg.elements {
                collect_element_vars(e, &mut inner);
            }
            let globals: Vec<String> = inner.intersection(&outer).cloned().collect();
            let global_terms: Vec<Term> = globals.iter().map(|g| Term::var(g)).collect();

            let outer_pos: Vec<Literal> = rule
                .body
                .iter()
                .filter(|l| matches!(l, Literal::Pos(_)))
                .cloned()
                .collect();
            let mut element_rules = Vec::new();
            for e in &agg.elements {
                let mut bound = BTreeSet::new();
                for c in &e.condition {
                    if let Literal::Pos(a) = c {
                        a.binding_vars(&mut bound);
                    }
                }
                let mut body = e.condition.clone();
                if globals.iter().any(|g| !bound.contains(g)) {
                    body.extend(outer_pos.iter().cloned());
                }
                let mut args = global_terms.clone();
                args.extend(e.terms.iter().cloned());
                element_rules.push((args, body));
            }
            let key = format!(
                "{:?}|{}|{}",
                agg.function,
                globals.len(),
                element_rules
                    .iter()
                    .map(|(a, b)| {
                        let head = Atom::new("e", a.clone());
                        Rule {
                            head: Head::Atom(head),
                            body: b.clone(),
                        }
                        .to_string()
                    })
                    .collect::<Vec<_>>()
                    .join("|")
            );
            let def = match self.agg_keys.get(&key) {
                Some(&d) => d,
                None => {
                    let d = self.out.aggs.len();
                    let node_name = format!("_agg{d}");
                    let node_pred = self.store.predicate(&node_name, globals.len() + 1);
                    self.out.aggs.push(AggDef {
                        function: agg.function,
                        node_pred,
                        nglobals: globals.len(),
                    });
                    self.agg_keys.insert(key, d);
                    for (args, body) in element_rules {
                        let r = Rule {
                            head: Head::Atom(Atom::new(&format!("_agg{d}_e"), args)),
                            body,
                        };
                        self.rule(&r, Some(d))?;
                    }
                    d
                }
            };
            let mut node_args = global_terms;
            node_args.push(agg.lower_bound.clone());
            items.push(BodyItem::Node(
                def,
                Atom::new(&format!("_agg{def}"), node_args),
            ));
        }
        Ok(items)
    }

    fn directive(&mut self, d: &HeuristicDirective) -> Result<()> {
        let text = directive_to_heuristic_rule(d).to_string();
        let mut vars = Vars::new();
        let mut atoms = Vec::new();
        let mut pos_signs = Vec::new();
        let mut cmps = Vec::new();
        let mut neg = Vec::new();
        for c in &d.condition {
            match c {
                ConditionLiteral::Pos(h) => {
                    let ca = positive_catom(&h.atom, &mut vars, self.store, &mut cmps);
                    let set = match h.sign {
                        Sign::Minus => MatchSet::FalseSeen,
                        Sign::Plus | Sign::Empty => MatchSet::Known,
                    };
                    atoms.push((ca, set));
                    pos_signs.push(h.sign);
                }
                ConditionLiteral::Neg(h) => {
                    neg.push((h.sign, catom(&h.atom, &mut vars, self.store)))
                }
                ConditionLiteral::Cmp(cmp) => cmps.push(CCmp::new(
                    cterm(&cmp.lhs, &mut vars),
                    cmp.op,
                    cterm(&cmp.rhs, &mut vars),
                )),
            }
        }
        let head = catom(&d.head.atom, &mut vars, self.store);
        let weight = cterm(&d.weight, &mut vars);
        let level = cterm(&d.level, &mut vars);
        let nvars = vars.names.len();
        self.out.directives.push(CompiledDirective {
            text,
            head_sign: d.head.sign,
            head,
            join: Join::new(atoms, cmps, nvars),
            pos_signs,
            neg,
            weight,
            level,
        });
        Ok(())
    }
}

enum BodyItem {
    Pos(Atom),
    Neg(Atom),
    Cmp(Comparison),
    Node(usize, Atom),
}

fn collect_element_vars(e: &AggElement, out: &mut BTreeSet<String>) {
    for t in &e.terms {
        t.collect_vars(out);
    }
    for c in &e.condition {
        match c {
            Literal::Pos(a) | Literal::Neg(a) => a.collect_vars(out),
            Literal::Cmp(cmp) => cmp.collect_vars(out),
            Literal::Agg(_) => {}
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::load;

    fn compiled(src: &str) -> (CompiledProgram, AtomStore) {
        let mut store = AtomStore::new();
        let p = compile(&load(src).unwrap(), &mut store).unwrap();
        (p, store)
    }

    #[test]
    fn arithmetic_moves_into_comparison() {
        let (p, _) = compiled("q(2). r(1). p(X) :- r(X), q(X+1).");
        let r = &p.rules[0];
        assert!(r.join.atoms[1].0.is_simple());
        assert_eq!(r.join.cmps.len(), 1);
        assert!(!r.head_determines_body());
    }

    #[test]
    fn shared_aggregate_definition() {
        let (p, _) = compiled(
            "bin(1). size(1,2). bcap(5).
             :- bin(B), bcap(C), C+1 <= #sum { S,I : in(I,B), size(I,S) }.
             f(B,F) :- bin(B), fd(F), F <= #sum { S,I : in(I,B), size(I,S) }.",
        );
        assert_eq!(p.aggs.len(), 1);
        assert_eq!(p.aggs[0].nglobals, 1);
        let elements = p.rules.iter().filter(|r| r.element_of.is_some()).count();
        assert_eq!(elements, 1);
    }

    #[test]
    fn facts_expand() {
        let (p, store) = compiled("bin(1..3).");
        let shown: Vec<_> = p.facts.iter().map(|a| store.format(a)).collect();
        assert_eq!(shown, vec!["bin(1)", "bin(2)", "bin(3)"]);
    }

    #[test]
    fn plans_check_builtins_early() {
        let (p, _) = compiled("a(1). b(1). c(X) :- a(X), b(Y), X < 2.");
        let plan = p.rules[0].join.plan(None);
        assert_eq!(plan.checks[1], vec![0]);
    }

    #[test]
    fn closed_rules() {
        let (p, _) = compiled("x(1). b(X) :- x(X), not c(X). d(X) :- x(X), e(X,Y).");
        assert!(p.rules[0].head_determines_body());
        assert!(!p.rules[1].head_determines_body());
    }
}
