//! Property tests for the expression kernel: symbolic derivatives against
//! central finite differences, simplify/evaluate consistency, linearity,
//! mixed-partial symmetry and print/parse roundtrips.

use std::sync::Arc;

use num_traits::Signed;
use proptest::prelude::*;

use symex::rat::{rat_i, rat_q};
use symex::{
    collect_constraints, differentiate, evaluate, parse, sample_points, simplify, Assignment,
    EvalCtx, Expr, NumValue, Rat, SampleCfg,
};

/// Expressions exercised by the finite-difference checks: the right-hand
/// sides that show up across the worked examples, plus transcendental
/// ones.
fn corpus() -> Vec<Expr> {
    [
        "q^3",
        "q^4",
        "q^(3/2)",
        "A*x^3*q^4",
        "3*q^2/p + A*q^3/p^5",
        "A*y^(-7)*p^7*q^3",
        "(x + p*q)^2/(y + 1)",
        "exp(2*x)*q + ln(y*q)",
    ]
    .iter()
    .map(|s| parse(s).unwrap())
    .collect()
}

fn all_symbols(e: &Expr) -> Vec<Arc<str>> {
    e.free_symbols().into_iter().collect()
}

/// Central finite difference of `e` in `var` at `point`, step `h`.
fn central_diff(e: &Expr, var: &str, point: &Assignment, h: &Rat, ctx: &EvalCtx) -> Option<Rat> {
    let x0 = point.get(var)?.value().clone();
    let mut plus = point.clone();
    plus.set(var, &x0 + h);
    let mut minus = point.clone();
    minus.set(var, &x0 - h);
    let fp = evaluate(e, &plus, ctx).ok()?;
    let fm = evaluate(e, &minus, ctx).ok()?;
    Some((fp.value() - fm.value()) / (h + h))
}

#[test]
fn derivatives_match_finite_differences() {
    let ctx = EvalCtx::with_digits(60);
    let h = rat_q(1, 10i64.pow(12));
    let tol = rat_q(1, 10i64.pow(6));
    for e in corpus() {
        let syms = all_symbols(&e);
        let cons = collect_constraints(&e);
        for var in ["x", "y", "p", "q"] {
            if e.is_free_of(var) {
                continue;
            }
            let de = differentiate(&e, var);
            let points = sample_points(&syms, &cons, &SampleCfg::with_seed(0xd1ff), 100);
            assert!(points.len() >= 50, "not enough valid points for {e}");
            for pt in points {
                let Some(fd) = central_diff(&e, var, &pt, &h, &ctx) else {
                    continue;
                };
                let Ok(sym) = evaluate(&de, &pt, &ctx) else {
                    continue;
                };
                let denom = if sym.abs() > rat_i(1) { sym.abs() } else { rat_i(1) };
                let err = (sym.value() - &fd).abs() / denom;
                assert!(
                    err <= tol,
                    "d/d{var} {e} at {pt:?}: symbolic {} vs fd {}",
                    sym.value(),
                    fd
                );
            }
        }
    }
}

#[test]
fn simplify_preserves_values() {
    let ctx = EvalCtx::default();
    for e in corpus() {
        let s = simplify(&e);
        let syms = all_symbols(&e);
        let mut cons = collect_constraints(&e);
        cons.extend(collect_constraints(&s));
        for pt in sample_points(&syms, &cons, &SampleCfg::with_seed(0x51), 20) {
            let a = evaluate(&e, &pt, &ctx).unwrap();
            let b = evaluate(&s, &pt, &ctx).unwrap();
            match (&a, &b) {
                (NumValue::Exact(x), NumValue::Exact(y)) => assert_eq!(x, y, "on {e}"),
                _ => {
                    let err = (a.value() - b.value()).abs();
                    let tol = rat_q(1, 10i64.pow(15)).pow(2);
                    assert!(err < tol, "on {e}");
                }
            }
        }
    }
}

#[test]
fn differentiation_is_linear() {
    let a = rat_q(3, 2);
    let b = rat_i(-7);
    for pair in corpus().windows(2) {
        let (e1, e2) = (&pair[0], &pair[1]);
        for var in ["x", "q"] {
            let combo = Expr::add(
                &Expr::mul(&Expr::num(a.clone()), e1),
                &Expr::mul(&Expr::num(b.clone()), e2),
            );
            let lhs = simplify(&differentiate(&combo, var));
            let rhs = simplify(&Expr::add(
                &Expr::mul(&Expr::num(a.clone()), &differentiate(e1, var)),
                &Expr::mul(&Expr::num(b.clone()), &differentiate(e2, var)),
            ));
            assert!(
                simplify(&Expr::sub(&lhs, &rhs)).is_zero(),
                "linearity failed on {e1}, {e2} in {var}"
            );
        }
    }
}

#[test]
fn mixed_partials_commute() {
    for e in corpus() {
        let pq = differentiate(&differentiate(&e, "p"), "q");
        let qp = differentiate(&differentiate(&e, "q"), "p");
        assert!(
            simplify(&Expr::sub(&pq, &qp)).is_zero(),
            "mixed partials differ on {e}"
        );
        let xq = differentiate(&differentiate(&e, "x"), "q");
        let qx = differentiate(&differentiate(&e, "q"), "x");
        assert!(simplify(&Expr::sub(&xq, &qx)).is_zero());
    }
}

// Random canonical expressions for the roundtrip property.
fn leaf() -> BoxedStrategy<Expr> {
    prop_oneof![
        Just(Expr::sym("x")),
        Just(Expr::sym("y")),
        Just(Expr::sym("p")),
        Just(Expr::sym("q")),
        Just(Expr::sym("A")),
        (-9i64..=9).prop_map(Expr::int),
    ]
    .boxed()
}

fn arb_expr() -> BoxedStrategy<Expr> {
    leaf().prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::add(&a, &b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::mul(&a, &b)),
            (inner.clone(), -3i64..=3).prop_map(|(a, n)| {
                // Avoid the degenerate zero-to-negative-power node.
                if a.is_zero() && n < 0 {
                    Expr::powi(&a, -n)
                } else {
                    Expr::powi(&a, n)
                }
            }),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::sub(&a, &b)),
            inner.clone().prop_map(|a| Expr::pow(&a, rat_q(1, 2))),
        ]
    })
    .boxed()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn parse_print_roundtrip(e in arb_expr()) {
        let printed = e.to_string();
        let back = parse(&printed).unwrap_or_else(|err| panic!("reparse of `{printed}` failed: {err}"));
        prop_assert_eq!(back, e);
    }
}
