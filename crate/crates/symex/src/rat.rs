//! Exact rational scalars and small helpers shared across the kernel.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number; the only numeric scalar in the tree.
pub type Rat = BigRational;

/// Small copyable rational used for monomial exponents.
pub type Rex = Ratio<i64>;

pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_q(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rex(n: i64, d: i64) -> Rex {
    Rex::new(n, d)
}

pub fn rex_int(n: i64) -> Rex {
    Rex::from_integer(n)
}

/// Converts an exponent to the small representation. Exponents in this
/// problem class stay tiny, so the conversion is expected to succeed.
pub fn rat_to_rex(r: &Rat) -> Option<Rex> {
    let n = r.numer().to_i64()?;
    let d = r.denom().to_i64()?;
    Some(Rex::new(n, d))
}

pub fn rex_to_rat(r: Rex) -> Rat {
    Rat::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// gcd of two rationals: gcd of numerators over lcm of denominators.
/// Returns a positive value; gcd(0, b) = |b|.
pub fn rat_gcd(a: &Rat, b: &Rat) -> Rat {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let n = a.numer().gcd(b.numer());
    let d = a.denom().lcm(b.denom());
    Rat::new(n, d)
}

/// Exact integer power with a zero-base guard left to the caller.
pub fn rat_powi(base: &Rat, e: i64) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    let mut acc = Rat::one();
    let mut b = if e > 0 { base.clone() } else { base.recip() };
    let mut n = e.unsigned_abs();
    while n > 0 {
        if n & 1 == 1 {
            acc *= &b;
        }
        b = &b * &b;
        n >>= 1;
    }
    acc
}

/// Exact n-th root of a nonnegative integer if it is a perfect power.
pub fn perfect_root(v: &BigInt, n: u64) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let r = v.nth_root(n.try_into().ok()?);
    if num_traits::pow::Pow::pow(&r, n) == *v {
        Some(r)
    } else {
        None
    }
}

/// Exact rational power `base^(p/q)` when the result is rational.
pub fn exact_pow(base: &Rat, e: &Rex) -> Option<Rat> {
    if e.is_integer() {
        if base.is_zero() && *e.numer() < 0 {
            return None;
        }
        return Some(rat_powi(base, *e.numer()));
    }
    if base.is_zero() {
        return if *e.numer() > 0 { Some(Rat::zero()) } else { None };
    }
    if base.is_negative() {
        return None;
    }
    let q = *e.denom() as u64;
    let rn = perfect_root(base.numer(), q)?;
    let rd = perfect_root(base.denom(), q)?;
    Some(rat_powi(&Rat::new(rn, rd), *e.numer()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_of_rationals() {
        assert_eq!(rat_gcd(&rat_q(4, 3), &rat_q(2, 9)), rat_q(2, 9));
        assert_eq!(rat_gcd(&rat_i(0), &rat_q(-5, 7)), rat_q(5, 7));
    }

    #[test]
    fn exact_roots() {
        assert_eq!(exact_pow(&rat_i(8), &rex(1, 3)), Some(rat_i(2)));
        assert_eq!(exact_pow(&rat_q(4, 9), &rex(1, 2)), Some(rat_q(2, 3)));
        assert_eq!(exact_pow(&rat_i(2), &rex(1, 2)), None);
        assert_eq!(exact_pow(&rat_i(-8), &rex(1, 3)), None);
        assert_eq!(exact_pow(&rat_i(2), &rex(-2, 1)), Some(rat_q(1, 4)));
    }
}
