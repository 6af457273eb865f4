//! High-precision numeric kernels on exact rationals.
//!
//! Transcendental functions and roots return rational approximations
//! correct to a requested number of significant decimal digits (50 by
//! default, with guard digits added internally). Everything is
//! deterministic: no floating point enters the data path except as an
//! initial Newton guess.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rat::{rat_i, rat_powi, Rat, Rex};

fn pow10(d: u32) -> BigInt {
    BigInt::from(10u32).pow(d)
}

/// Rounds to `d` decimal places, bounding denominator growth.
pub fn round_dec(x: &Rat, d: u32) -> Rat {
    let scale = pow10(d);
    let scaled = x * Rat::from_integer(scale.clone());
    let rounded = scaled.round();
    Rat::new(rounded.to_integer(), scale)
}

fn f64_guess(a: &Rat) -> Option<f64> {
    let v = a.to_f64()?;
    if v.is_finite() && v > 0.0 {
        Some(v)
    } else {
        None
    }
}

/// `a^(1/q)` for `a > 0`, correct to `digits` significant digits.
pub fn nth_root(a: &Rat, q: u64, digits: u32) -> Rat {
    assert!(a.is_positive() && q >= 1);
    if q == 1 {
        return a.clone();
    }
    let work = digits + 15;
    let mut y = match f64_guess(a) {
        Some(v) => {
            let g = v.powf(1.0 / q as f64);
            Rat::from_float(g).unwrap_or_else(|| rat_i(1))
        }
        None => {
            // Scale from the bit lengths when f64 overflows.
            let bits = a.numer().bits() as i64 - a.denom().bits() as i64;
            rat_powi(&rat_i(2), bits / q as i64)
        }
    };
    if !y.is_positive() {
        y = rat_i(1);
    }
    let qi = rat_i(q as i64);
    let qm1 = rat_i(q as i64 - 1);
    let tol = Rat::new(BigInt::one(), pow10(digits + 8));
    loop {
        let yq1 = rat_powi(&y, q as i64 - 1);
        let next = round_dec(&((&qm1 * &y + a / yq1) / &qi), work);
        let done = (&next - &y).abs() <= &next.abs() * &tol;
        y = next;
        if done {
            return round_dec(&y, work);
        }
    }
}

/// `base^e` for `base > 0` and rational exponent `e`.
pub fn pow_rex(base: &Rat, e: Rex, digits: u32) -> Rat {
    assert!(base.is_positive());
    let n = *e.numer();
    let q = *e.denom() as u64;
    let root = nth_root(base, q, digits + 6);
    round_dec(&rat_powi(&root, n), digits + 10)
}

/// `exp(x)` correct to `digits` significant digits.
pub fn exp(x: &Rat, digits: u32) -> Rat {
    if x.is_zero() {
        return rat_i(1);
    }
    // Halve the argument until |x| < 1/2, then Taylor, then square back.
    let mut k = 0u32;
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let mut xr = x.clone();
    while xr.abs() >= half {
        xr = &xr / rat_i(2);
        k += 1;
        if k > 64 {
            break;
        }
    }
    let work = digits + k + 15;
    let tol = Rat::new(BigInt::one(), pow10(work));
    let mut sum = rat_i(1);
    let mut term = rat_i(1);
    let mut n = 1i64;
    loop {
        term = round_dec(&(&term * &xr / rat_i(n)), work);
        sum += &term;
        n += 1;
        if term.abs() < tol {
            break;
        }
    }
    let mut out = round_dec(&sum, work);
    for _ in 0..k {
        out = round_dec(&(&out * &out), work);
    }
    round_dec(&out, digits + 10)
}

fn atanh_series(t: &Rat, work: u32) -> Rat {
    let tol = Rat::new(BigInt::one(), pow10(work));
    let t2 = t * t;
    let mut term = t.clone();
    let mut sum = t.clone();
    let mut n = 1i64;
    loop {
        term = round_dec(&(&term * &t2), work);
        n += 2;
        let add = &term / rat_i(n);
        sum += &add;
        if add.abs() < tol {
            break;
        }
    }
    sum
}

fn ln2(work: u32) -> Rat {
    // ln 2 = 2 atanh(1/3)
    rat_i(2) * atanh_series(&Rat::new(BigInt::one(), BigInt::from(3)), work)
}

/// `ln(x)` for `x > 0`, correct to `digits` significant digits.
pub fn ln(x: &Rat, digits: u32) -> Rat {
    assert!(x.is_positive());
    if x.is_one() {
        return Rat::zero();
    }
    let work = digits + 15;
    let mut m = x.clone();
    let mut k = 0i64;
    let hi = Rat::new(BigInt::from(3), BigInt::from(2));
    let lo = Rat::new(BigInt::from(3), BigInt::from(4));
    while m >= hi {
        m = &m / rat_i(2);
        k += 1;
    }
    while m < lo {
        m = &m * rat_i(2);
        k -= 1;
    }
    let t = (&m - rat_i(1)) / (&m + rat_i(1));
    let core = rat_i(2) * atanh_series(&round_dec(&t, work), work);
    let out = if k == 0 {
        core
    } else {
        core + rat_i(k) * ln2(work)
    };
    round_dec(&out, digits + 10)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_q;

    fn digits_match(got: &Rat, reference: &str, digits: u32) {
        let parts: Vec<&str> = reference.split('.').collect();
        let denom_pow = parts[1].len() as u32;
        let whole: BigInt = format!("{}{}", parts[0], parts[1]).parse().unwrap();
        let refv = Rat::new(whole, pow10(denom_pow));
        let err = (got - &refv).abs();
        let tol = Rat::new(BigInt::one(), pow10(digits));
        assert!(err < tol, "got {got}, reference {reference}");
    }

    #[test]
    fn sqrt2_to_40_digits() {
        let got = nth_root(&rat_i(2), 2, 50);
        digits_match(
            &got,
            "1.4142135623730950488016887242096980785696718753769",
            40,
        );
    }

    #[test]
    fn exp_one_to_40_digits() {
        let got = exp(&rat_i(1), 50);
        digits_match(
            &got,
            "2.7182818284590452353602874713526624977572470937000",
            40,
        );
    }

    #[test]
    fn ln2_to_40_digits() {
        let got = ln(&rat_i(2), 50);
        digits_match(
            &got,
            "0.6931471805599453094172321214581765680755001343603",
            40,
        );
    }

    #[test]
    fn fractional_power() {
        // 4^(3/2) = 8 exactly; the approximation must be extremely close.
        let got = pow_rex(&rat_i(4), Rex::new(3, 2), 50);
        let err = (&got - rat_i(8)).abs();
        assert!(err < Rat::new(BigInt::one(), pow10(45)));
        // and a genuinely irrational one
        let got = pow_rex(&rat_q(9, 4), Rex::new(1, 2), 50);
        let err = (&got - rat_q(3, 2)).abs();
        assert!(err < Rat::new(BigInt::one(), pow10(45)));
    }
}
