//! Ground values, atoms and the atom store.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// A ground term. Integers order before symbols; symbols order lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Int(i64),
    Sym(Arc<str>),
}

impl Value {
    pub fn sym(s: &str) -> Value {
        Value::Sym(Arc::from(s))
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(i) => Some(*i),
            Value::Sym(_) => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Sym(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PredId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomId(pub u32);

impl AtomId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for AtomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroundAtom {
    pub pred: PredId,
    pub args: Vec<Value>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Predicate {
    pub name: Arc<str>,
    pub arity: usize,
}

impl Predicate {
    /// Predicates introduced by the system carry a leading underscore.
    pub fn is_internal(&self) -> bool {
        self.name.starts_with('_')
    }
}

/// Bijection between ground atoms and dense integer ids.
#[derive(Debug, Default, Clone)]
pub struct AtomStore {
    preds: Vec<Predicate>,
    pred_ids: HashMap<(Arc<str>, usize), PredId>,
    atoms: Vec<GroundAtom>,
    ids: HashMap<GroundAtom, AtomId>,
    by_pred: Vec<Vec<AtomId>>,
}

impl AtomStore {
    pub fn new() -> AtomStore {
        AtomStore::default()
    }

    pub fn predicate(&mut self, name: &str, arity: usize) -> PredId {
        if let Some(&id) = self.pred_ids.get(&(Arc::from(name), arity)) {
            return id;
        }
        let id = PredId(self.preds.len() as u32);
        let name: Arc<str> = Arc::from(name);
        self.preds.push(Predicate {
            name: name.clone(),
            arity,
        });
        self.pred_ids.insert((name, arity), id);
        self.by_pred.push(Vec::new());
        id
    }

    pub fn lookup_predicate(&self, name: &str, arity: usize) -> Option<PredId> {
        self.pred_ids.get(&(Arc::from(name), arity)).copied()
    }

    pub fn pred(&self, id: PredId) -> &Predicate {
        &self.preds[id.0 as usize]
    }

    /// Returns the id and whether the atom was newly created.
    pub fn intern(&mut self, atom: GroundAtom) -> (AtomId, bool) {
        if let Some(&id) = self.ids.get(&atom) {
            return (id, false);
        }
        let id = AtomId(self.atoms.len() as u32);
        self.by_pred[atom.pred.0 as usize].push(id);
        self.atoms.push(atom.clone());
        self.ids.insert(atom, id);
        (id, true)
    }

    /// Every interned atom of `pred`, in creation order.
    pub fn atoms_of(&self, pred: PredId) -> &[AtomId] {
        &self.by_pred[pred.0 as usize]
    }

    pub fn get(&self, atom: &GroundAtom) -> Option<AtomId> {
        self.ids.get(atom).copied()
    }

    pub fn atom(&self, id: AtomId) -> &GroundAtom {
        &self.atoms[id.index()]
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn is_internal(&self, id: AtomId) -> bool {
        self.pred(self.atom(id).pred).is_internal()
    }

    pub fn display(&self, id: AtomId) -> String {
        self.format(self.atom(id))
    }

    pub fn format(&self, atom: &GroundAtom) -> String {
        let p = self.pred(atom.pred);
        if atom.args.is_empty() {
            return p.name.to_string();
        }
        let args: Vec<String> = atom.args.iter().map(Value::to_string).collect();
        format!("{}({})", p.name, args.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_a_bijection() {
        let mut s = AtomStore::new();
        let p = s.predicate("a", 1);
        let (a, new_a) = s.intern(GroundAtom {
            pred: p,
            args: vec![Value::Int(4)],
        });
        let (b, new_b) = s.intern(GroundAtom {
            pred: p,
            args: vec![Value::Int(4)],
        });
        assert!(new_a && !new_b);
        assert_eq!(a, b);
        assert_eq!(s.display(a), "a(4)");
    }

    #[test]
    fn integers_sort_before_symbols() {
        assert!(Value::Int(100) < Value::sym("a"));
        assert!(Value::sym("a") < Value::sym("b"));
    }
}
