//! Exact-first numeric evaluation.
//!
//! Evaluation returns an exact rational whenever the expression and the
//! assignment are rational-closed, and otherwise a high-precision
//! approximation (50 significant digits by default) that is clearly
//! marked as such. Mixing an approximate value into any operation makes
//! the result approximate.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::approx;
use crate::error::EvalError;
use crate::expr::{Expr, ExprKind};
use crate::rat::{exact_pow, rat_powi, rat_to_rex, Rat};

/// An exact rational or a correctly rounded high-precision approximation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NumValue {
    Exact(Rat),
    Approx(Rat),
}

impl NumValue {
    pub fn value(&self) -> &Rat {
        match self {
            NumValue::Exact(r) | NumValue::Approx(r) => r,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, NumValue::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        self.value().is_zero()
    }

    pub fn abs(&self) -> Rat {
        self.value().abs()
    }

    fn wrap(&self, other_exact: bool, v: Rat, digits: u32) -> NumValue {
        if self.is_exact() && other_exact {
            NumValue::Exact(v)
        } else {
            NumValue::Approx(approx::round_dec(&v, digits + 15))
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EvalCtx {
    /// Significant decimal digits guaranteed on approximate paths.
    pub digits: u32,
}

impl Default for EvalCtx {
    fn default() -> Self {
        EvalCtx { digits: 50 }
    }
}

impl EvalCtx {
    pub fn with_digits(digits: u32) -> Self {
        EvalCtx { digits }
    }

    fn zero_threshold(&self) -> Rat {
        Rat::new(BigInt::one(), BigInt::from(10u32).pow(self.digits))
    }
}

/// A binding of symbol names to numeric values. Every free symbol of the
/// evaluated expression must be bound.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    map: BTreeMap<Arc<str>, NumValue>,
}

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn bind(mut self, name: &str, v: Rat) -> Self {
        self.map.insert(Arc::from(name), NumValue::Exact(v));
        self
    }

    pub fn bind_value(mut self, name: &str, v: NumValue) -> Self {
        self.map.insert(Arc::from(name), v);
        self
    }

    pub fn set(&mut self, name: &str, v: Rat) {
        self.map.insert(Arc::from(name), NumValue::Exact(v));
    }

    pub fn get(&self, name: &str) -> Option<&NumValue> {
        self.map.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Arc<str>, &NumValue)> {
        self.map.iter()
    }
}

/// Evaluates an expression at an assignment.
pub fn evaluate(e: &Expr, a: &Assignment, ctx: &EvalCtx) -> Result<NumValue, EvalError> {
    let mut memo: HashMap<u64, NumValue> = HashMap::new();
    eval_rec(e, a, ctx, &mut memo)
}

fn eval_rec(
    e: &Expr,
    a: &Assignment,
    ctx: &EvalCtx,
    memo: &mut HashMap<u64, NumValue>,
) -> Result<NumValue, EvalError> {
    if let Some(v) = memo.get(&e.id()) {
        return Ok(v.clone());
    }
    let out = match e.kind() {
        ExprKind::Num(r) => NumValue::Exact(r.clone()),
        ExprKind::Sym(s) => a
            .get(s)
            .cloned()
            .ok_or_else(|| EvalError::UnboundSymbol(s.to_string()))?,
        ExprKind::Sum(cs) => {
            let mut acc = NumValue::Exact(Rat::zero());
            for c in cs {
                let v = eval_rec(c, a, ctx, memo)?;
                let sum = acc.value() + v.value();
                acc = acc.wrap(v.is_exact(), sum, ctx.digits);
            }
            acc
        }
        ExprKind::Prod(cs) => {
            let mut acc = NumValue::Exact(Rat::one());
            for c in cs {
                let v = eval_rec(c, a, ctx, memo)?;
                let prod = acc.value() * v.value();
                acc = acc.wrap(v.is_exact(), prod, ctx.digits);
            }
            acc
        }
        ExprKind::Pow(b, ex) => {
            let v = eval_rec(b, a, ctx, memo)?;
            let re = rat_to_rex(ex).ok_or(EvalError::FracPowNonPositive)?;
            let base = v.value();
            if re.is_integer() {
                let n = *re.numer();
                if base.is_zero() || (!v.is_exact() && base.abs() <= ctx.zero_threshold()) {
                    if n < 0 {
                        return Err(EvalError::DivisionByZero);
                    }
                    NumValue::Exact(Rat::zero())
                } else {
                    let p = rat_powi(base, n);
                    v.wrap(true, p, ctx.digits)
                }
            } else {
                if base.is_zero() {
                    if *re.numer() > 0 {
                        NumValue::Exact(Rat::zero())
                    } else {
                        return Err(EvalError::DivisionByZero);
                    }
                } else if !base.is_positive() {
                    return Err(EvalError::FracPowNonPositive);
                } else if v.is_exact() {
                    match exact_pow(base, &re) {
                        Some(r) => NumValue::Exact(r),
                        None => NumValue::Approx(approx::pow_rex(base, re, ctx.digits)),
                    }
                } else {
                    NumValue::Approx(approx::pow_rex(base, re, ctx.digits))
                }
            }
        }
        ExprKind::Exp(arg) => {
            let v = eval_rec(arg, a, ctx, memo)?;
            if v.is_exact() && v.is_zero() {
                NumValue::Exact(Rat::one())
            } else {
                NumValue::Approx(approx::exp(v.value(), ctx.digits))
            }
        }
        ExprKind::Ln(arg) => {
            let v = eval_rec(arg, a, ctx, memo)?;
            if !v.value().is_positive() {
                return Err(EvalError::LnNonPositive);
            }
            if v.is_exact() && v.value().is_one() {
                NumValue::Exact(Rat::zero())
            } else {
                NumValue::Approx(approx::ln(v.value(), ctx.digits))
            }
        }
    };
    memo.insert(e.id(), out.clone());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use crate::rat::{rat_i, rat_q};

    fn ev(src: &str, binds: &[(&str, Rat)]) -> Result<NumValue, EvalError> {
        let mut a = Assignment::new();
        for (n, v) in binds {
            a.set(n, v.clone());
        }
        evaluate(&parse(src).unwrap(), &a, &EvalCtx::default())
    }

    #[test]
    fn exact_paths() {
        assert_eq!(ev("q^3", &[("q", rat_i(2))]).unwrap(), NumValue::Exact(rat_i(8)));
        assert_eq!(
            ev("3*q^2/p", &[("q", rat_i(2)), ("p", rat_i(4))]).unwrap(),
            NumValue::Exact(rat_i(3))
        );
        // exact fractional power of a perfect square
        assert_eq!(
            ev("q^(1/2)", &[("q", rat_q(9, 4))]).unwrap(),
            NumValue::Exact(rat_q(3, 2))
        );
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(ev("1/q", &[("q", rat_i(0))]), Err(EvalError::DivisionByZero));
    }

    #[test]
    fn unbound_symbol() {
        assert_eq!(
            ev("x + y", &[("x", rat_i(1))]),
            Err(EvalError::UnboundSymbol("y".to_string()))
        );
    }

    #[test]
    fn domain_errors() {
        assert_eq!(
            ev("q^(1/2)", &[("q", rat_i(-1))]),
            Err(EvalError::FracPowNonPositive)
        );
        assert_eq!(ev("ln(x)", &[("x", rat_i(0))]), Err(EvalError::LnNonPositive));
    }

    #[test]
    fn approximate_path_is_marked() {
        let v = ev("q^(1/2)", &[("q", rat_i(2))]).unwrap();
        assert!(!v.is_exact());
        let sq = v.value() * v.value();
        let err = (&sq - rat_i(2)).abs();
        assert!(err < rat_q(1, 10i64.pow(18)).pow(2));
    }
}
