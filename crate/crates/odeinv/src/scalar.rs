//! A small scalar abstraction so the invariant formulas are written once
//! and evaluated both symbolically (`Expr`) and numerically (`Val`).

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use symex::approx::round_dec;
use symex::rat::{rat_powi, Rat};
use symex::{Expr, NumValue};

pub trait Scalar: Clone {
    fn from_int(n: i64) -> Self;
    fn from_frac(n: i64, d: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn powi(&self, n: i64) -> Self;
}

impl Scalar for Expr {
    fn from_int(n: i64) -> Self {
        Expr::int(n)
    }
    fn from_frac(n: i64, d: i64) -> Self {
        Expr::num(Rat::new(BigInt::from(n), BigInt::from(d)))
    }
    fn add(&self, o: &Self) -> Self {
        Expr::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Expr::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Expr::mul(self, o)
    }
    fn div(&self, o: &Self) -> Self {
        Expr::div(self, o)
    }
    fn neg(&self) -> Self {
        Expr::neg(self)
    }
    fn powi(&self, n: i64) -> Self {
        Expr::powi(self, n)
    }
}

/// Numeric scalar that poisons on division by (numerically) zero, so a
/// chain evaluated at a singular point degrades to `Singular` instead of
/// panicking; callers skip such points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Val {
    Num(NumValue),
    Singular,
}

/// Digits kept on approximate paths in value chains.
const VAL_DIGITS: u32 = 60;

impl Val {
    pub fn exact(r: Rat) -> Val {
        Val::Num(NumValue::Exact(r))
    }

    pub fn num(&self) -> Option<&NumValue> {
        match self {
            Val::Num(v) => Some(v),
            Val::Singular => None,
        }
    }

    pub fn is_singular(&self) -> bool {
        matches!(self, Val::Singular)
    }

    fn zeroish(v: &NumValue) -> bool {
        match v {
            NumValue::Exact(r) => r.is_zero(),
            NumValue::Approx(r) => r.abs() < Rat::new(BigInt::from(1), BigInt::from(10).pow(50)),
        }
    }

    fn wrap(exact: bool, r: Rat) -> Val {
        if exact {
            Val::Num(NumValue::Exact(r))
        } else {
            Val::Num(NumValue::Approx(round_dec(&r, VAL_DIGITS + 10)))
        }
    }

    fn bin(&self, o: &Self, f: impl Fn(&Rat, &Rat) -> Rat) -> Val {
        match (self, o) {
            (Val::Num(a), Val::Num(b)) => {
                Val::wrap(a.is_exact() && b.is_exact(), f(a.value(), b.value()))
            }
            _ => Val::Singular,
        }
    }
}

impl Scalar for Val {
    fn from_int(n: i64) -> Self {
        Val::exact(Rat::from_integer(BigInt::from(n)))
    }
    fn from_frac(n: i64, d: i64) -> Self {
        Val::exact(Rat::new(BigInt::from(n), BigInt::from(d)))
    }
    fn add(&self, o: &Self) -> Self {
        self.bin(o, |a, b| a + b)
    }
    fn sub(&self, o: &Self) -> Self {
        self.bin(o, |a, b| a - b)
    }
    fn mul(&self, o: &Self) -> Self {
        self.bin(o, |a, b| a * b)
    }
    fn div(&self, o: &Self) -> Self {
        match (self, o) {
            (Val::Num(a), Val::Num(b)) => {
                if Val::zeroish(b) {
                    Val::Singular
                } else {
                    Val::wrap(a.is_exact() && b.is_exact(), a.value() / b.value())
                }
            }
            _ => Val::Singular,
        }
    }
    fn neg(&self) -> Self {
        match self {
            Val::Num(v) => Val::wrap(v.is_exact(), -v.value()),
            Val::Singular => Val::Singular,
        }
    }
    fn powi(&self, n: i64) -> Self {
        match self {
            Val::Num(v) => {
                if n < 0 && Val::zeroish(v) {
                    Val::Singular
                } else {
                    Val::wrap(v.is_exact(), rat_powi(v.value(), n))
                }
            }
            Val::Singular => Val::Singular,
        }
    }
}

/// Linear combination of products: `sum(coeff * prod(factors)) / den`.
/// Written to mirror how the invariant tables are printed, one
/// `(coefficient, factors)` pair per term.
pub fn lc<T: Scalar>(terms: &[(i64, &[&T])], den: i64) -> T {
    let mut acc = T::from_int(0);
    for (c, fs) in terms {
        let mut t = T::from_int(*c);
        for f in fs.iter() {
            t = t.mul(f);
        }
        acc = acc.add(&t);
    }
    if den != 1 {
        acc = acc.div(&T::from_int(den));
    }
    acc
}
