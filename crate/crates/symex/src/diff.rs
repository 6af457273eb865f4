//! Exact partial differentiation on expression trees.

use std::collections::HashMap;
use std::sync::Mutex;

use once_cell::sync::Lazy;

use crate::expr::{Expr, ExprKind};
use crate::rat::Rat;

static DIFF_MEMO: Lazy<Mutex<HashMap<(u64, String), Expr>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Exact partial derivative with respect to the named symbol. Linear,
/// satisfies the Leibniz rule, and returns locally canonical trees.
pub fn differentiate(e: &Expr, var: &str) -> Expr {
    let key = (e.id(), var.to_string());
    if let Some(d) = DIFF_MEMO.lock().unwrap().get(&key) {
        return d.clone();
    }
    let out = match e.kind() {
        ExprKind::Num(_) => Expr::zero(),
        ExprKind::Sym(s) => {
            if &**s == var {
                Expr::one()
            } else {
                Expr::zero()
            }
        }
        ExprKind::Sum(cs) => {
            let terms: Vec<Expr> = cs.iter().map(|c| differentiate(c, var)).collect();
            Expr::add_all(&terms)
        }
        ExprKind::Prod(cs) => {
            let mut terms = Vec::with_capacity(cs.len());
            for (i, c) in cs.iter().enumerate() {
                let dc = differentiate(c, var);
                if dc.is_zero() {
                    continue;
                }
                let mut fs: Vec<Expr> = Vec::with_capacity(cs.len());
                fs.push(dc);
                for (j, other) in cs.iter().enumerate() {
                    if j != i {
                        fs.push(other.clone());
                    }
                }
                terms.push(Expr::mul_all(&fs));
            }
            Expr::add_all(&terms)
        }
        ExprKind::Pow(b, ex) => {
            let db = differentiate(b, var);
            if db.is_zero() {
                Expr::zero()
            } else {
                let lowered = Expr::pow(b, ex - Rat::from_integer(1.into()));
                Expr::mul_all(&[Expr::num(ex.clone()), lowered, db])
            }
        }
        ExprKind::Exp(a) => {
            let da = differentiate(a, var);
            if da.is_zero() {
                Expr::zero()
            } else {
                Expr::mul(e, &da)
            }
        }
        ExprKind::Ln(a) => {
            let da = differentiate(a, var);
            if da.is_zero() {
                Expr::zero()
            } else {
                Expr::div(&da, a)
            }
        }
    };
    DIFF_MEMO.lock().unwrap().insert(key, out.clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use crate::rat::rat_q;

    fn d(src: &str, v: &str) -> Expr {
        differentiate(&parse(src).unwrap(), v)
    }

    #[test]
    fn power_rule() {
        assert_eq!(d("q^3", "q"), parse("3*q^2").unwrap());
        // applied twice: d2/dq2 (A x^3 q^4) = 12 A x^3 q^2
        let d2 = differentiate(&d("A*x^3*q^4", "q"), "q");
        assert_eq!(d2, parse("12*A*x^3*q^2").unwrap());
    }

    #[test]
    fn rational_exponent_power_rule() {
        // d/dq q^(3/2) = (3/2) q^(1/2)
        let got = d("q^(3/2)", "q");
        let expect = Expr::mul(
            &Expr::num(rat_q(3, 2)),
            &Expr::pow(&Expr::sym("q"), rat_q(1, 2)),
        );
        assert_eq!(got, expect);
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        assert!(d("5", "x").is_zero());
        assert!(d("A", "x").is_zero());
    }

    #[test]
    fn quotient_and_transcendental() {
        // d/dx ln(x) = 1/x
        assert_eq!(d("ln(x)", "x"), parse("1/x").unwrap());
        // d/dx exp(2x) = 2 exp(2x)
        let got = d("exp(2*x)", "x");
        let expect = Expr::mul(&Expr::int(2), &parse("exp(2*x)").unwrap());
        assert_eq!(got, expect);
    }
}
