//! Zero-equality decisions.
//!
//! The canonical rational normal form is the primary oracle: on products
//! of rational powers of symbols the decision is exact in both
//! directions. Outside that class (`exp`, `ln`, opaque fractional
//! powers) a nonzero normal form is not proof, so the verdict falls back
//! to deterministic seeded sampling: a witness point with a value beyond
//! tolerance answers No, an all-small sample answers Yes, and anything
//! else is Unknown.

use crate::eval::{evaluate, Assignment, EvalCtx, NumValue};
use crate::expr::Expr;
use crate::normalize::{is_pure_rational_class, normalize};
use crate::rat::{rat_q, Rat};
use crate::sample::{collect_constraints, sample_points, SampleCfg};

/// Three-valued verdict of a zero test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trit {
    Yes,
    No,
    Unknown,
}

/// Policy for [`equals_zero`].
#[derive(Debug, Clone)]
pub struct ZeroPolicy {
    /// `None` restricts the decision to symbolic evidence.
    pub numeric: Option<NumericFallback>,
}

#[derive(Debug, Clone)]
pub struct NumericFallback {
    pub points: usize,
    pub tolerance: Rat,
    pub seed: u64,
    pub digits: u32,
}

impl Default for NumericFallback {
    fn default() -> Self {
        NumericFallback {
            points: 25,
            tolerance: rat_q(1, 10i64.pow(15)).pow(2), // 1e-30
            seed: 0x5eed,
            digits: 50,
        }
    }
}

impl Default for ZeroPolicy {
    fn default() -> Self {
        ZeroPolicy {
            numeric: Some(NumericFallback::default()),
        }
    }
}

impl ZeroPolicy {
    pub fn symbolic_only() -> Self {
        ZeroPolicy { numeric: None }
    }

    pub fn with_seed(seed: u64) -> Self {
        ZeroPolicy {
            numeric: Some(NumericFallback {
                seed,
                ..NumericFallback::default()
            }),
        }
    }
}

/// A point at which the expression provably does not vanish.
#[derive(Debug, Clone)]
pub struct Witness {
    pub point: Assignment,
    pub value: NumValue,
}

/// Decides whether the expression is identically zero on its domain.
pub fn equals_zero(e: &Expr, policy: &ZeroPolicy) -> Trit {
    equals_zero_witnessed(e, policy).0
}

/// Like [`equals_zero`], also returning a non-vanishing witness for No.
pub fn equals_zero_witnessed(e: &Expr, policy: &ZeroPolicy) -> (Trit, Option<Witness>) {
    let f = match normalize(e) {
        Ok(f) => f,
        Err(_) => return (Trit::Unknown, None),
    };
    if f.is_zero() {
        return (Trit::Yes, None);
    }
    if let Some(c) = f.as_constant() {
        if !num_traits::Zero::is_zero(c) {
            return (Trit::No, None);
        }
    }
    let pure = is_pure_rational_class(&f);
    let Some(np) = &policy.numeric else {
        // Symbolic-only: a nonzero pure-rational normal form proves the
        // function is not identically zero on its domain.
        return if pure {
            (Trit::No, None)
        } else {
            (Trit::Unknown, None)
        };
    };
    let symbols: Vec<_> = e.free_symbols().into_iter().collect();
    let constraints = collect_constraints(e);
    let cfg = SampleCfg {
        seed: np.seed,
        digits: np.digits,
        ..SampleCfg::default()
    };
    let points = sample_points(&symbols, &constraints, &cfg, np.points);
    if points.is_empty() {
        return if pure { (Trit::No, None) } else { (Trit::Unknown, None) };
    }
    let ctx = EvalCtx::with_digits(np.digits);
    let mut all_small = true;
    for pt in points {
        match evaluate(e, &pt, &ctx) {
            Ok(v) => {
                let nonzero = match &v {
                    NumValue::Exact(r) => !num_traits::Zero::is_zero(r),
                    NumValue::Approx(r) => {
                        num_traits::Signed::abs(r) > np.tolerance
                    }
                };
                if nonzero {
                    return (Trit::No, Some(Witness { point: pt, value: v }));
                }
                if v.abs() > np.tolerance {
                    all_small = false;
                }
            }
            Err(_) => all_small = false,
        }
    }
    if pure {
        // Nonzero as a rational normal form: identically zero is
        // impossible even though every sample hit a zero.
        return (Trit::No, None);
    }
    if all_small {
        (Trit::Yes, None)
    } else {
        (Trit::Unknown, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn ez(src: &str) -> Trit {
        equals_zero(&parse(src).unwrap(), &ZeroPolicy::default())
    }

    #[test]
    fn trivial_yes() {
        assert_eq!(ez("q - q"), Trit::Yes);
        assert_eq!(ez("(x + 1)^2 - x^2 - 2*x - 1"), Trit::Yes);
    }

    #[test]
    fn provable_no_with_witness() {
        let e = parse("q^2 - 1").unwrap();
        let (t, w) = equals_zero_witnessed(&e, &ZeroPolicy::default());
        assert_eq!(t, Trit::No);
        assert!(w.is_some());
    }

    #[test]
    fn transcendental_identity_via_sampling() {
        // exp(x)*exp(-x) - 1 folds symbolically already
        assert_eq!(ez("exp(x)*exp(-x) - 1"), Trit::Yes);
        // ln(exp(x)) - x also folds
        assert_eq!(ez("ln(exp(x)) - x"), Trit::Yes);
        // a genuinely numeric one: exp(ln(x) + ln(x)) - x^2 folds too;
        // use sampling for exp(x)^2 - exp(2*x) written opaquely
        assert_eq!(ez("exp(x)^2/exp(2*x) - 1"), Trit::Yes);
    }

    #[test]
    fn symbolic_only_unknown_outside_class() {
        let e = parse("exp(x) - x - 1").unwrap();
        assert_eq!(equals_zero(&e, &ZeroPolicy::symbolic_only()), Trit::Unknown);
        assert_eq!(equals_zero(&e, &ZeroPolicy::default()), Trit::No);
    }
}
