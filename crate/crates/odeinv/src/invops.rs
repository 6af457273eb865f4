//! Invariant differentiation operators.
//!
//! Both theorems provide four operators of the shape
//! `D = K Dx + L Dy + M Dp + N Dq`. Acting on a concretized invariant
//! (an expression in `x, y, p, q` once `f` is fixed), the jet-space
//! derivations collapse to ordinary partial derivatives, so application
//! is `K ∂x J + L ∂y J + M ∂p J + N ∂q J` with the coefficients read
//! from the ODE's derivative table.

use symex::normalize::simplify_factored;
use symex::zero::Trit;
use symex::{differentiate, equals_zero, Expr, ZeroPolicy};

use crate::error::OdeError;
use crate::jet::{OdeSpec, Z, VAR_P, VAR_Q, VAR_X, VAR_Y};

/// Which subgroup's operators to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpGroup {
    /// Theorem for `x̄ = x, ȳ = ψ(x,y)`; requires `f_{4,4} != 0`.
    PointSubgroup,
    /// Theorem for `x̄ = φ(x), ȳ = ψ(x,y)`; requires `f_{4,4,4} != 0`.
    FiberPreserving,
}

/// One invariant differentiation operator with concrete coefficients.
#[derive(Debug, Clone)]
pub struct InvOperator {
    pub group: OpGroup,
    pub index: u8,
    pub k: Expr,
    pub l: Expr,
    pub m: Expr,
    pub n: Expr,
}

impl InvOperator {
    /// Applies the operator to a concretized invariant.
    pub fn apply(&self, j: &Expr) -> Expr {
        simplify_factored(&Expr::add_all(&[
            Expr::mul(&self.k, &differentiate(j, VAR_X)),
            Expr::mul(&self.l, &differentiate(j, VAR_Y)),
            Expr::mul(&self.m, &differentiate(j, VAR_P)),
            Expr::mul(&self.n, &differentiate(j, VAR_Q)),
        ]))
    }
}

fn guard(ode: &OdeSpec, z: Z, what: &str) -> Result<Expr, OdeError> {
    let e = ode.table().get(z).clone();
    if equals_zero(&e, &ZeroPolicy::default()) == Trit::Yes {
        return Err(OdeError::OutsideClass(format!(
            "{what} vanishes identically"
        )));
    }
    Ok(e)
}

/// The four operators of the point subgroup `x̄ = x`.
pub fn point_operators(ode: &OdeSpec) -> Result<[InvOperator; 4], OdeError> {
    let f44 = guard(ode, Z::F44, "f_{4,4}")?;
    let t = ode.table();
    let f = t.get(Z::F).clone();
    let f3 = t.get(Z::F3).clone();
    let f4 = t.get(Z::F4).clone();
    let zero = Expr::zero();
    let inv44 = Expr::div(&Expr::one(), &f44);
    let mk = |index, k: Expr, l: Expr, m: Expr, n: Expr| InvOperator {
        group: OpGroup::PointSubgroup,
        index,
        k,
        l,
        m,
        n,
    };
    Ok([
        mk(1, zero.clone(), zero.clone(), zero.clone(), inv44.clone()),
        mk(
            2,
            zero.clone(),
            zero.clone(),
            Expr::mul(&Expr::int(3), &inv44),
            Expr::mul(&Expr::mul(&Expr::int(2), &f4), &inv44),
        ),
        mk(
            3,
            zero.clone(),
            Expr::mul(&Expr::int(9), &inv44),
            Expr::mul(&Expr::mul(&Expr::int(3), &f4), &inv44),
            Expr::mul(
                &Expr::add(
                    &Expr::mul(&Expr::int(2), &Expr::powi(&f4, 2)),
                    &Expr::mul(&Expr::int(3), &f3),
                ),
                &inv44,
            ),
        ),
        mk(4, Expr::one(), Expr::sym(VAR_P), Expr::sym(VAR_Q), f),
    ])
}

/// The four operators of the fiber-preserving group.
pub fn fiber_operators(ode: &OdeSpec) -> Result<[InvOperator; 4], OdeError> {
    let f444 = guard(ode, Z::F444, "f_{4,4,4}")?;
    let t = ode.table();
    let f = t.get(Z::F).clone();
    let f24 = t.get(Z::F24).clone();
    let f33 = t.get(Z::F33).clone();
    let f34 = t.get(Z::F34).clone();
    let f344 = t.get(Z::F344).clone();
    let f4 = t.get(Z::F4).clone();
    let f44 = t.get(Z::F44).clone();
    let zero = Expr::zero();
    let mk = |index, k: Expr, l: Expr, m: Expr, n: Expr| InvOperator {
        group: OpGroup::FiberPreserving,
        index,
        k: simplify_factored(&k),
        l: simplify_factored(&l),
        m: simplify_factored(&m),
        n: simplify_factored(&n),
    };
    // D1 = (f44/f444) Dq
    let d1 = mk(
        1,
        zero.clone(),
        zero.clone(),
        zero.clone(),
        Expr::div(&f44, &f444),
    );
    // D2 = (1/(f44 f444)) (f444 Dp - f344 Dq)
    let den2 = Expr::mul(&f44, &f444);
    let d2 = mk(
        2,
        zero.clone(),
        zero.clone(),
        Expr::div(&f444, &den2),
        Expr::neg(&Expr::div(&f344, &den2)),
    );
    // D3 = (1/(f44^4 f444)) (6 f44 f444^2 Dy
    //      - 2 f44 f444 (f4 f444 + 3 f344) Dp
    //      + (3 f44 f344^2 + f444^2 (3 f33 + 2 f34 f4 - 6 f24)) Dq)
    let den3 = Expr::mul(&Expr::powi(&f44, 4), &f444);
    let l3 = Expr::div(
        &Expr::mul_all(&[Expr::int(6), f44.clone(), Expr::powi(&f444, 2)]),
        &den3,
    );
    let m3 = Expr::neg(&Expr::div(
        &Expr::mul_all(&[
            Expr::int(2),
            f44.clone(),
            f444.clone(),
            Expr::add(
                &Expr::mul(&f4, &f444),
                &Expr::mul(&Expr::int(3), &f344),
            ),
        ]),
        &den3,
    ));
    let n3 = Expr::div(
        &Expr::add(
            &Expr::mul_all(&[Expr::int(3), f44.clone(), Expr::powi(&f344, 2)]),
            &Expr::mul(
                &Expr::powi(&f444, 2),
                &Expr::add_all(&[
                    Expr::mul(&Expr::int(3), &f33),
                    Expr::mul_all(&[Expr::int(2), f34.clone(), f4.clone()]),
                    Expr::mul(&Expr::int(-6), &f24),
                ]),
            ),
        ),
        &den3,
    );
    let d3 = mk(3, zero.clone(), l3, m3, n3);
    // D4 = (f444/f44^2)(Dx + p Dy + q Dp + f Dq)
    let pre = Expr::div(&f444, &Expr::powi(&f44, 2));
    let d4 = mk(
        4,
        pre.clone(),
        Expr::mul(&pre, &Expr::sym(VAR_P)),
        Expr::mul(&pre, &Expr::sym(VAR_Q)),
        Expr::mul(&pre, &f),
    );
    Ok([d1, d2, d3, d4])
}

#[cfg(test)]
mod tests {
    use super::*;
    use symex::rat::rat_q;
    use symex::simplify;

    fn ode(src: &str) -> OdeSpec {
        OdeSpec::parse(src).unwrap()
    }

    #[test]
    fn fiber_d1_on_q_for_quartic() {
        // f44/f444 = 12q^2/(24q) = q/2
        let ops = fiber_operators(&ode("q^4")).unwrap();
        let got = ops[0].apply(&Expr::sym("q"));
        let expect = Expr::mul(&Expr::num(rat_q(1, 2)), &Expr::sym("q"));
        assert!(simplify(&Expr::sub(&got, &expect)).is_zero());
    }

    #[test]
    fn fiber_d4_kills_constant_invariants() {
        let o = ode("q^3");
        let ops = fiber_operators(&o).unwrap();
        let b = crate::invariants::beta_invariants(&o).unwrap();
        let got = ops[3].apply(b.get(5));
        assert!(got.is_zero());
    }

    #[test]
    fn point_d4_is_total_derivative() {
        let o = ode("3*q^2/p + A*q^3/p^5");
        let ops = point_operators(&o).unwrap();
        for src in ["x", "q^2*p", "x*y + q/p", "q^3 - y*p"] {
            let j = symex::parse(src).unwrap();
            let a = ops[3].apply(&j);
            let b = crate::jet::total_derivative(&j, &o);
            assert!(
                simplify(&Expr::sub(&a, &b)).is_zero(),
                "D4 and Dx differ on {src}"
            );
        }
        assert!(simplify(&Expr::sub(&ops[3].apply(&Expr::sym("x")), &Expr::one())).is_zero());
    }

    #[test]
    fn out_of_class_errors() {
        assert!(matches!(
            fiber_operators(&ode("p*q")),
            Err(OdeError::OutsideClass(_))
        ));
        assert!(matches!(
            point_operators(&ode("p*q")),
            Err(OdeError::OutsideClass(_))
        ));
    }
}
