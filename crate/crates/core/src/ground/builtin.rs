//! Integer arithmetic and comparison built-ins.

use std::collections::BTreeMap;

use super::value::Value;
use crate::error::{Error, Result};
use crate::frontend::ast::{BinOp, CmpOp, Comparison, Term};

pub type Substitution = BTreeMap<String, Value>;

pub fn apply_op(op: BinOp, a: &Value, b: &Value) -> Result<Value> {
    let (Some(x), Some(y)) = (a.as_int(), b.as_int()) else {
        return Err(Error::Eval(format!(
            "arithmetic on non-integer operands `{a}` and `{b}`"
        )));
    };
    let r = match op {
        BinOp::Add => x.checked_add(y),
        BinOp::Sub => x.checked_sub(y),
        BinOp::Mul => x.checked_mul(y),
        BinOp::Mod => {
            if y == 0 {
                return Err(Error::Eval(format!("`{x} \\ 0`: modulo by zero")));
            }
            x.checked_rem_euclid(y)
        }
    };
    r.map(Value::Int)
        .ok_or_else(|| Error::Eval(format!("integer overflow in `{x} {op:?} {y}`")))
}

pub fn negate(a: &Value) -> Result<Value> {
    match a {
        Value::Int(i) => i
            .checked_neg()
            .map(Value::Int)
            .ok_or_else(|| Error::Eval("integer overflow in negation".to_string())),
        Value::Sym(s) => Err(Error::Eval(format!("negation of symbol `{s}`"))),
    }
}

pub fn compare(op: CmpOp, a: &Value, b: &Value) -> bool {
    match op {
        CmpOp::Eq => a == b,
        CmpOp::Ne => a != b,
        CmpOp::Lt => a < b,
        CmpOp::Le => a <= b,
        CmpOp::Gt => a > b,
        CmpOp::Ge => a >= b,
    }
}

/// Evaluates a term without intervals under `sigma`.
pub fn eval_term(term: &Term, sigma: &Substitution) -> Result<Value> {
    match term {
        Term::Int(i) => Ok(Value::Int(*i)),
        Term::Sym(s) => Ok(Value::sym(s)),
        Term::Var(v) => sigma
            .get(v)
            .cloned()
            .ok_or_else(|| Error::Eval(format!("unbound variable {v}"))),
        Term::Anon => Err(Error::Eval("anonymous variable has no value".to_string())),
        Term::BinOp(op, a, b) => apply_op(*op, &eval_term(a, sigma)?, &eval_term(b, sigma)?),
        Term::Neg(a) => negate(&eval_term(a, sigma)?),
        Term::Interval(..) => Err(Error::Eval(format!(
            "interval `{term}` where a single value is required"
        ))),
    }
}

/// Evaluates a term that may contain an interval; yields every value it denotes.
pub fn eval_term_values(term: &Term, sigma: &Substitution) -> Result<Vec<Value>> {
    match term {
        Term::Interval(lo, hi) => {
            let (lo, hi) = (eval_term(lo, sigma)?, eval_term(hi, sigma)?);
            match (lo.as_int(), hi.as_int()) {
                (Some(l), Some(h)) => Ok((l..=h).map(Value::Int).collect()),
                _ => Err(Error::Eval(format!(
                    "interval bounds `{lo}..{hi}` are not integers"
                ))),
            }
        }
        _ => Ok(vec![eval_term(term, sigma)?]),
    }
}

/// Truth of a comparison under `sigma`.
pub fn eval_builtin(cmp: &Comparison, sigma: &Substitution) -> Result<bool> {
    let l = eval_term(&cmp.lhs, sigma)?;
    let r = eval_term(&cmp.rhs, sigma)?;
    Ok(compare(cmp.op, &l, &r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::ast::Term as T;

    fn sigma(pairs: &[(&str, i64)]) -> Substitution {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), Value::Int(*v)))
            .collect()
    }

    #[test]
    fn capacity_check_holds_for_largest_item() {
        // C >= F + I with C=5, F=0, I=5
        let cmp = Comparison {
            lhs: T::var("C"),
            op: CmpOp::Ge,
            rhs: T::binop(BinOp::Add, T::var("F"), T::var("I")),
        };
        assert!(eval_builtin(&cmp, &sigma(&[("C", 5), ("F", 0), ("I", 5)])).unwrap());
        assert!(!eval_builtin(&cmp, &sigma(&[("C", 5), ("F", 1), ("I", 5)])).unwrap());
    }

    #[test]
    fn odd_sum_detected_by_modulo() {
        let cmp = Comparison {
            lhs: T::binop(BinOp::Mod, T::Int(9), T::Int(2)),
            op: CmpOp::Ne,
            rhs: T::Int(0),
        };
        assert!(eval_builtin(&cmp, &Substitution::new()).unwrap());
    }

    #[test]
    fn identity() {
        let cmp = Comparison {
            lhs: T::var("X"),
            op: CmpOp::Eq,
            rhs: T::var("X"),
        };
        assert!(eval_builtin(&cmp, &sigma(&[("X", 7)])).unwrap());
    }

    #[test]
    fn modulo_is_euclidean() {
        let v = apply_op(BinOp::Mod, &Value::Int(-7), &Value::Int(2)).unwrap();
        assert_eq!(v, Value::Int(1));
    }

    #[test]
    fn symbolic_operand_is_an_error() {
        let t = T::binop(BinOp::Add, T::sym("a"), T::Int(1));
        assert_eq!(
            eval_term(&t, &Substitution::new()).unwrap_err().code(),
            "E_EVAL"
        );
    }

    #[test]
    fn intervals_expand() {
        let t = T::Interval(Box::new(T::Int(1)), Box::new(T::var("N")));
        let vals = eval_term_values(&t, &sigma(&[("N", 3)])).unwrap();
        assert_eq!(vals, vec![Value::Int(1), Value::Int(2), Value::Int(3)]);
        assert!(eval_term_values(&t, &sigma(&[("N", 0)]))
            .unwrap()
            .is_empty());
    }
}
