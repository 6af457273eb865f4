//! Bridge between expression trees and the factored normal form.
//!
//! [`simplify`] renders the canonical expanded numerator/denominator
//! form, so two equal rational functions produce the identical tree.
//! Cancellation is complete whenever the common factor is exposed by the
//! way the expression was built (which covers every quotient this
//! library itself produces) or discoverable by trial division between
//! numerator and denominator factors; canonicalization of expressions
//! involving `exp`, `ln` or fractional powers of sums is best-effort,
//! with zero testing falling back to sampling.

use std::collections::HashMap;
use std::sync::Mutex;

use once_cell::sync::Lazy;

use crate::expr::{Expr, ExprKind};
use crate::factored::{add_many, poly_to_expr, to_num_den, DivisionByZeroExpr, Factored, NfResult};
use crate::poly::atom_id;
use crate::rat::{rat_to_rex, rex_to_rat, Rat};
use crate::sample::{collect_constraints, Constraint};

static NORM_MEMO: Lazy<Mutex<HashMap<u64, NfResult<Factored>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));
static SIMP_MEMO: Lazy<Mutex<HashMap<u64, Expr>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Converts an expression to factored normal form (memoized).
pub fn normalize(e: &Expr) -> NfResult<Factored> {
    if let Some(f) = NORM_MEMO.lock().unwrap().get(&e.id()) {
        return f.clone();
    }
    let out = normalize_uncached(e);
    NORM_MEMO
        .lock()
        .unwrap()
        .insert(e.id(), out.clone());
    out
}

fn normalize_uncached(e: &Expr) -> NfResult<Factored> {
    match e.kind() {
        ExprKind::Num(r) => Ok(Factored::from_coeff(r.clone())),
        ExprKind::Sym(_) => Ok(Factored::from_atom(atom_id(e))),
        ExprKind::Sum(cs) => {
            let parts = cs.iter().map(normalize).collect::<NfResult<Vec<_>>>()?;
            Ok(add_many(parts))
        }
        ExprKind::Prod(cs) => {
            let mut acc = Factored::one();
            for c in cs {
                acc = acc.mul(&normalize(c)?);
                if acc.is_zero() {
                    return Ok(acc);
                }
            }
            Ok(acc)
        }
        ExprKind::Pow(b, ex) => {
            let base = normalize(b)?;
            match rat_to_rex(ex) {
                Some(re) => base.powr(re),
                // Exponent out of the small range: keep the node opaque.
                None => Ok(Factored::from_atom(atom_id(e))),
            }
        }
        ExprKind::Exp(arg) => {
            // Canonicalize the argument through the full machine so that
            // arguments equal as rational functions intern as one atom.
            let arg2 = simplify(arg);
            if arg2.same(arg) {
                Ok(Factored::from_atom(atom_id(e)))
            } else {
                let rebuilt = Expr::exp_of(&arg2);
                if rebuilt.same(e) {
                    Ok(Factored::from_atom(atom_id(e)))
                } else {
                    normalize(&rebuilt)
                }
            }
        }
        ExprKind::Ln(arg) => {
            let arg2 = simplify(arg);
            if arg2.same(arg) {
                Ok(Factored::from_atom(atom_id(e)))
            } else {
                let rebuilt = Expr::ln_of(&arg2);
                if rebuilt.same(e) {
                    Ok(Factored::from_atom(atom_id(e)))
                } else {
                    normalize(&rebuilt)
                }
            }
        }
    }
}

/// Renders a factored value as a canonical tree without expanding the
/// factor list. Compact; used for intermediate results.
pub fn render_factored(f: &Factored) -> Expr {
    if f.is_zero() {
        return Expr::zero();
    }
    let mut parts = vec![Expr::num(f.coeff.clone())];
    for &(a, e) in &f.mono {
        parts.push(Expr::pow(&crate::poly::atom_expr(a), rex_to_rat(e)));
    }
    for (p, k) in &f.factors {
        parts.push(Expr::powi(&poly_to_expr(p), *k));
    }
    Expr::mul_all(&parts)
}

/// Canonical simplification: expanded numerator over expanded
/// denominator with content and common factors removed. Two equal
/// rational functions yield the identical tree.
pub fn simplify(e: &Expr) -> Expr {
    if let Some(s) = SIMP_MEMO.lock().unwrap().get(&e.id()) {
        return s.clone();
    }
    let out = match normalize(e) {
        Ok(f) => {
            let (num, den) = to_num_den(&f);
            let num_e = poly_to_expr(&num);
            if let Some(c) = den.as_constant() {
                if c == &Rat::from_integer(1.into()) {
                    num_e
                } else {
                    Expr::div(&num_e, &Expr::num(c.clone()))
                }
            } else {
                Expr::div(&num_e, &poly_to_expr(&den))
            }
        }
        Err(DivisionByZeroExpr) => e.clone(),
    };
    SIMP_MEMO.lock().unwrap().insert(e.id(), out.clone());
    out
}

/// Like [`simplify`] but also reports the domain exclusions of the input
/// (denominators that must not vanish, bases and `ln` arguments that must
/// stay positive), including those no longer visible in the output, e.g.
/// `(x^2-1)/(x-1)` simplifies to `x+1` with the recorded exclusion
/// `x-1 != 0`.
pub fn simplify_with_domain(e: &Expr) -> (Expr, Vec<Constraint>) {
    let out = simplify(e);
    (out, collect_constraints(e))
}

/// A compact simplification that keeps the factored structure. Values
/// are equal to [`simplify`] output on their common domain; preferred for
/// large intermediates where expansion would be wasteful.
pub fn simplify_factored(e: &Expr) -> Expr {
    match normalize(e) {
        Ok(f) => render_factored(&f),
        Err(_) => e.clone(),
    }
}

/// True when the normal form contains no transcendental or opaque atoms,
/// i.e. the expression is a product of rational powers of symbols and
/// primes times a rational function; on that class a nonzero normal form
/// proves the function is not identically zero.
pub fn is_pure_rational_class(f: &Factored) -> bool {
    f.atoms().iter().all(|&a| {
        let ax = crate::poly::atom_expr(a);
        matches!(ax.kind(), ExprKind::Sym(_) | ExprKind::Num(_))
    })
}

/// Convenience: numerator polynomial is identically zero.
pub fn is_zero_expr(e: &Expr) -> NfResult<bool> {
    Ok(normalize(e)?.is_zero())
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn simp(src: &str) -> String {
        simplify(&parse(src).unwrap()).to_string()
    }

    #[test]
    fn simplify_examples() {
        // q^3*p - p*q^3 = 0
        assert_eq!(simp("q^3*p - p*q^3"), "0");
        // (x^2-1)/(x-1) = x + 1
        assert_eq!(simp("(x^2 - 1)/(x - 1)"), "1 + x");
    }

    #[test]
    fn equal_rational_functions_identical_trees() {
        let a = simplify(&parse("(x^2 - 1)/(x - 1)").unwrap());
        let b = simplify(&parse("x + 1").unwrap());
        assert!(a.same(&b));

        let c = simplify(&parse("(x - 1)*(x + 1)").unwrap());
        let d = simplify(&parse("x^2 - 1").unwrap());
        assert!(c.same(&d));

        let e = simplify(&parse("1/(1/x + 1/y)").unwrap());
        let f = simplify(&parse("x*y/(x + y)").unwrap());
        assert!(e.same(&f));
    }

    #[test]
    fn domain_exclusions_recorded() {
        let (out, cons) = simplify_with_domain(&parse("(x^2 - 1)/(x - 1)").unwrap());
        assert_eq!(out.to_string(), "1 + x");
        assert!(cons
            .iter()
            .any(|c| matches!(c, Constraint::NonZero(e) if e.to_string().contains("x"))));
    }

    #[test]
    fn simplify_is_idempotent() {
        for src in [
            "3*q^2/p + A*q^3/p^5",
            "(x + y)^2/(x*y - 1)",
            "q^(3/2) + q^(1/2)",
            "exp(2*x)*exp(-x)",
        ] {
            let e = parse(src).unwrap();
            let s1 = simplify(&e);
            let s2 = simplify(&s1);
            assert!(s1.same(&s2), "not idempotent on {src}: {s1} vs {s2}");
        }
    }

    #[test]
    fn division_by_zero_is_left_alone() {
        let e = parse("1/(q - q)").unwrap();
        // Constructors fold q - q to 0; the node is 0^(-1) and simplify
        // returns it unchanged rather than inventing a value.
        let s = simplify(&e);
        assert_eq!(s.to_string(), e.to_string());
    }
}
