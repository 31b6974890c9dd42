//! Abstract syntax of the input language.
//!
//! Every node prints back to concrete syntax that the parser accepts, so
//! `parse(print(parse(s)))` yields the same tree.

use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    /// Integer modulo, written `\`.
    Mod,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Mod => "\\",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Int(i64),
    Sym(String),
    Var(String),
    /// The anonymous variable `_`.
    Anon,
    BinOp(BinOp, Box<Term>, Box<Term>),
    Neg(Box<Term>),
    Interval(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn sym(name: &str) -> Term {
        Term::Sym(name.to_string())
    }

    pub fn binop(op: BinOp, lhs: Term, rhs: Term) -> Term {
        Term::BinOp(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::BinOp(_, a, b) | Term::Interval(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::Neg(a) => a.collect_vars(out),
            Term::Int(_) | Term::Sym(_) | Term::Anon => {}
        }
    }

    pub fn has_interval(&self) -> bool {
        match self {
            Term::Interval(..) => true,
            Term::BinOp(_, a, b) => a.has_interval() || b.has_interval(),
            Term::Neg(a) => a.has_interval(),
            _ => false,
        }
    }

    pub fn has_anon(&self) -> bool {
        match self {
            Term::Anon => true,
            Term::BinOp(_, a, b) | Term::Interval(a, b) => a.has_anon() || b.has_anon(),
            Term::Neg(a) => a.has_anon(),
            _ => false,
        }
    }

    fn needs_parens(&self) -> bool {
        matches!(self, Term::BinOp(..) | Term::Interval(..))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Int(i) => write!(f, "{i}"),
            Term::Sym(s) | Term::Var(s) => write!(f, "{s}"),
            Term::Anon => write!(f, "_"),
            Term::BinOp(op, a, b) => {
                // Operands are parenthesised whenever they are compound, which
                // keeps the printed form unambiguous without precedence tables.
                let wrap = |t: &Term, f: &mut fmt::Formatter<'_>| {
                    if t.needs_parens() {
                        write!(f, "({t})")
                    } else {
                        write!(f, "{t}")
                    }
                };
                wrap(a, f)?;
                write!(f, "{}", op.symbol())?;
                wrap(b, f)
            }
            Term::Neg(a) => {
                if a.needs_parens() || matches!(**a, Term::Neg(_) | Term::Int(_)) {
                    write!(f, "-({a})")
                } else {
                    write!(f, "-{a}")
                }
            }
            Term::Interval(a, b) => write!(f, "{a}..{b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: &str, args: Vec<Term>) -> Atom {
        Atom {
            predicate: predicate.to_string(),
            args,
        }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        for a in &self.args {
            a.collect_vars(out);
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    /// Variables occurring as direct arguments; only these are bound by matching.
    pub fn binding_vars(&self, out: &mut BTreeSet<String>) {
        for a in &self.args {
            if let Term::Var(v) = a {
                out.insert(v.clone());
            }
        }
    }

    pub fn has_anon(&self) -> bool {
        self.args.iter().any(Term::has_anon)
    }

    pub fn has_interval(&self) -> bool {
        self.args.iter().any(Term::has_interval)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.predicate)?;
        if !self.args.is_empty() {
            write!(f, "(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Comparison {
    pub lhs: Term,
    pub op: CmpOp,
    pub rhs: Term,
}

impl Comparison {
    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        self.lhs.collect_vars(out);
        self.rhs.collect_vars(out);
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.op.symbol(), self.rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AggFunction {
    Count,
    Sum,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AggElement {
    pub terms: Vec<Term>,
    pub condition: Vec<Literal>,
}

/// `bound <= #f { elements }`; only lower bounds exist in the language.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Aggregate {
    pub function: AggFunction,
    pub elements: Vec<AggElement>,
    pub lower_bound: Term,
}

impl fmt::Display for Aggregate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.function {
            AggFunction::Count => "#count",
            AggFunction::Sum => "#sum",
        };
        write!(f, "{} <= {} {{ ", self.lower_bound, name)?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write_list(f, &e.terms, ",")?;
            if !e.condition.is_empty() {
                write!(f, " : ")?;
                write_list(f, &e.condition, ", ")?;
            }
        }
        write!(f, " }}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Literal {
    Pos(Atom),
    Neg(Atom),
    Cmp(Comparison),
    Agg(Aggregate),
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Pos(a) => write!(f, "{a}"),
            Literal::Neg(a) => write!(f, "not {a}"),
            Literal::Cmp(c) => write!(f, "{c}"),
            Literal::Agg(a) => write!(f, "{a}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChoiceElement {
    pub atom: Atom,
    pub condition: Vec<Literal>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Head {
    Atom(Atom),
    Choice(Vec<ChoiceElement>),
    /// Integrity constraint.
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub head: Head,
    pub body: Vec<Literal>,
}

impl Rule {
    pub fn is_fact(&self) -> bool {
        matches!(self.head, Head::Atom(_)) && self.body.is_empty()
    }

    pub fn is_constraint(&self) -> bool {
        matches!(self.head, Head::None)
    }

    pub fn positive_body(&self) -> impl Iterator<Item = &Literal> {
        self.body.iter().filter(|l| !matches!(l, Literal::Neg(_)))
    }

    pub fn negative_body(&self) -> impl Iterator<Item = &Atom> {
        self.body.iter().filter_map(|l| match l {
            Literal::Neg(a) => Some(a),
            _ => None,
        })
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.head {
            Head::Atom(a) => write!(f, "{a}")?,
            Head::Choice(elems) => {
                write!(f, "{{ ")?;
                for (i, e) in elems.iter().enumerate() {
                    if i > 0 {
                        write!(f, "; ")?;
                    }
                    write!(f, "{}", e.atom)?;
                    if !e.condition.is_empty() {
                        write!(f, " : ")?;
                        write_list(f, &e.condition, ", ")?;
                    }
                }
                write!(f, " }}")?;
            }
            Head::None => {}
        }
        if self.body.is_empty() {
            if matches!(self.head, Head::Atom(_)) {
                return write!(f, ".");
            }
            return write!(f, " :- .");
        }
        if matches!(self.head, Head::None) {
            write!(f, ":- ")?;
        } else {
            write!(f, " :- ")?;
        }
        write_list(f, &self.body, ", ")?;
        write!(f, ".")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    /// `+a`: the atom is true.
    Plus,
    /// `-a`: the atom is false.
    Minus,
    /// `a`: the atom is true or must-be-true.
    Empty,
}

impl Sign {
    pub fn prefix(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
            Sign::Empty => "",
        }
    }

    /// Truth value a heuristic head with this sign asks for.
    pub fn head_polarity(self) -> bool {
        !matches!(self, Sign::Minus)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeuristicAtom {
    pub sign: Sign,
    pub atom: Atom,
}

impl HeuristicAtom {
    pub fn new(sign: Sign, atom: Atom) -> HeuristicAtom {
        HeuristicAtom { sign, atom }
    }

    /// The underlying atom with the sign removed.
    pub fn atm(&self) -> &Atom {
        &self.atom
    }
}

impl fmt::Display for HeuristicAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.sign.prefix(), self.atom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConditionLiteral {
    Pos(HeuristicAtom),
    Neg(HeuristicAtom),
    Cmp(Comparison),
}

impl fmt::Display for ConditionLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionLiteral::Pos(h) => write!(f, "{h}"),
            ConditionLiteral::Neg(h) => write!(f, "not {h}"),
            ConditionLiteral::Cmp(c) => write!(f, "{c}"),
        }
    }
}

/// `#heuristic head : condition. [weight@level]`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeuristicDirective {
    pub head: HeuristicAtom,
    pub condition: Vec<ConditionLiteral>,
    pub weight: Term,
    pub level: Term,
}

impl HeuristicDirective {
    pub fn positive_condition(&self) -> impl Iterator<Item = &HeuristicAtom> {
        self.condition.iter().filter_map(|c| match c {
            ConditionLiteral::Pos(h) => Some(h),
            _ => None,
        })
    }

    pub fn negative_condition(&self) -> impl Iterator<Item = &HeuristicAtom> {
        self.condition.iter().filter_map(|c| match c {
            ConditionLiteral::Neg(h) => Some(h),
            _ => None,
        })
    }
}

impl fmt::Display for HeuristicDirective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#heuristic {}", self.head)?;
        if !self.condition.is_empty() {
            write!(f, " : ")?;
            write_list(f, &self.condition, ", ")?;
        }
        write!(f, ". [{}@{}]", self.weight, self.level)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Program {
    pub rules: Vec<Rule>,
    pub directives: Vec<HeuristicDirective>,
}

impl Program {
    pub fn facts(&self) -> impl Iterator<Item = &Rule> {
        self.rules.iter().filter(|r| r.is_fact())
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        for d in &self.directives {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}

pub(crate) fn write_list<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: &[T],
    sep: &str,
) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            write!(f, "{sep}")?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}
