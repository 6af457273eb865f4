//! ODE specifications and derivative tables in jet coordinates
//! `(x, y, p, q)` with `p = y'`, `q = y''`.
//!
//! The table holds all partial derivatives of `f` with respect to
//! `y, p, q` up to third order, with derivatives in `x` deliberately
//! replaced by total-derivative columns `d_{i,j}` along solutions,
//! matching the variable list the invariant formulas are written in.
//! Index convention: subscript 1 is x, 2 is y, 3 is p, 4 is q.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use symex::normalize::simplify_factored;
use symex::sample::Constraint;
use symex::{differentiate, evaluate, Assignment, EvalCtx, Expr};

use crate::error::OdeError;
use crate::scalar::Val;

pub const VAR_X: &str = "x";
pub const VAR_Y: &str = "y";
pub const VAR_P: &str = "p";
pub const VAR_Q: &str = "q";

/// A third-order ODE `y''' = f(x, y, p, q)` with declared parameters and
/// domain constraints.
#[derive(Debug, Clone)]
pub struct OdeSpec {
    f: Expr,
    params: BTreeSet<Arc<str>>,
    constraints: Vec<Constraint>,
    table: Arc<OnceLock<Arc<DerivTable>>>,
}

impl PartialEq for OdeSpec {
    fn eq(&self, other: &Self) -> bool {
        self.f == other.f && self.params == other.params
    }
}

impl OdeSpec {
    /// Builds an ODE from its right-hand side. Free symbols other than
    /// the jet variables are accepted when listed in `params`.
    pub fn new(f: Expr, params: &[&str]) -> Result<OdeSpec, OdeError> {
        let param_set: BTreeSet<Arc<str>> = params.iter().map(|p| Arc::<str>::from(*p)).collect();
        for s in f.free_symbols() {
            let name = &*s;
            if matches!(name, VAR_X | VAR_Y | VAR_P | VAR_Q) || param_set.contains(&s) {
                continue;
            }
            return Err(OdeError::BadOde(format!(
                "free symbol `{name}` is neither a jet variable nor a declared parameter"
            )));
        }
        let constraints = symex::collect_constraints(&f);
        Ok(OdeSpec {
            f,
            params: param_set,
            constraints,
            table: Arc::new(OnceLock::new()),
        })
    }

    /// Parses the right-hand side, treating every non-jet identifier as a
    /// parameter.
    pub fn parse(src: &str) -> Result<OdeSpec, OdeError> {
        let f = symex::parse(src)?;
        let params: Vec<Arc<str>> = f
            .free_symbols()
            .into_iter()
            .filter(|s| !matches!(&**s, VAR_X | VAR_Y | VAR_P | VAR_Q))
            .collect();
        let param_refs: Vec<&str> = params.iter().map(|s| &**s).collect();
        OdeSpec::new(f, &param_refs)
    }

    pub fn f(&self) -> &Expr {
        &self.f
    }

    pub fn params(&self) -> &BTreeSet<Arc<str>> {
        &self.params
    }

    /// All symbols a sample point must bind: jet variables + parameters.
    pub fn all_symbols(&self) -> Vec<Arc<str>> {
        let mut out: Vec<Arc<str>> = [VAR_X, VAR_Y, VAR_P, VAR_Q]
            .iter()
            .map(|s| Arc::<str>::from(*s))
            .collect();
        out.extend(self.params.iter().cloned());
        out
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn with_constraint(mut self, c: Constraint) -> Self {
        self.constraints.push(c);
        self
    }

    /// The derivative table, computed once and cached.
    pub fn table(&self) -> Arc<DerivTable> {
        self.table
            .get_or_init(|| Arc::new(DerivTable::build(self)))
            .clone()
    }
}

/// Names of the 35 table entries: f, its y/p/q-partials up to third
/// order, and the total-derivative columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
#[allow(non_camel_case_types)]
pub enum Z {
    F,
    F2,
    F3,
    F4,
    F22,
    F23,
    F24,
    F33,
    F34,
    F44,
    F222,
    F223,
    F224,
    F233,
    F234,
    F244,
    F333,
    F334,
    F344,
    F444,
    D11,
    D12,
    D13,
    D14,
    D15,
    D16,
    D17,
    D18,
    D19,
    D110,
    D21,
    D22,
    D23,
    D24,
    D31,
}

pub const Z_ALL: [Z; 35] = [
    Z::F,
    Z::F2,
    Z::F3,
    Z::F4,
    Z::F22,
    Z::F23,
    Z::F24,
    Z::F33,
    Z::F34,
    Z::F44,
    Z::F222,
    Z::F223,
    Z::F224,
    Z::F233,
    Z::F234,
    Z::F244,
    Z::F333,
    Z::F334,
    Z::F344,
    Z::F444,
    Z::D11,
    Z::D12,
    Z::D13,
    Z::D14,
    Z::D15,
    Z::D16,
    Z::D17,
    Z::D18,
    Z::D19,
    Z::D110,
    Z::D21,
    Z::D22,
    Z::D23,
    Z::D24,
    Z::D31,
];

impl Z {
    fn index(self) -> usize {
        Z_ALL.iter().position(|&z| z == self).unwrap()
    }
}

/// The total derivative along solutions,
/// `Ḋx = ∂x + p ∂y + q ∂p + f ∂q`.
pub fn total_derivative(e: &Expr, ode: &OdeSpec) -> Expr {
    let ex = differentiate(e, VAR_X);
    let ey = differentiate(e, VAR_Y);
    let ep = differentiate(e, VAR_P);
    let eq = differentiate(e, VAR_Q);
    let p = Expr::sym(VAR_P);
    let q = Expr::sym(VAR_Q);
    simplify_factored(&Expr::add_all(&[
        ex,
        Expr::mul(&p, &ey),
        Expr::mul(&q, &ep),
        Expr::mul(ode.f(), &eq),
    ]))
}

/// All 35 entries, simplified.
#[derive(Debug)]
pub struct DerivTable {
    entries: [Expr; 35],
}

impl DerivTable {
    fn build(ode: &OdeSpec) -> DerivTable {
        let d = |e: &Expr, v: &str| simplify_factored(&differentiate(e, v));
        let f = simplify_factored(ode.f());
        let f2 = d(&f, VAR_Y);
        let f3 = d(&f, VAR_P);
        let f4 = d(&f, VAR_Q);
        let f22 = d(&f2, VAR_Y);
        let f23 = d(&f2, VAR_P);
        let f24 = d(&f2, VAR_Q);
        let f33 = d(&f3, VAR_P);
        let f34 = d(&f3, VAR_Q);
        let f44 = d(&f4, VAR_Q);
        let f222 = d(&f22, VAR_Y);
        let f223 = d(&f22, VAR_P);
        let f224 = d(&f22, VAR_Q);
        let f233 = d(&f23, VAR_P);
        let f234 = d(&f23, VAR_Q);
        let f244 = d(&f24, VAR_Q);
        let f333 = d(&f33, VAR_P);
        let f334 = d(&f33, VAR_Q);
        let f344 = d(&f34, VAR_Q);
        let f444 = d(&f44, VAR_Q);
        let dt = |e: &Expr| total_derivative(e, ode);
        let d11 = dt(&f);
        let d12 = dt(&f2);
        let d13 = dt(&f3);
        let d14 = dt(&f4);
        let d15 = dt(&f22);
        let d16 = dt(&f23);
        let d17 = dt(&f24);
        let d18 = dt(&f33);
        let d19 = dt(&f34);
        let d110 = dt(&f44);
        let d21 = dt(&d11);
        let d22 = dt(&d12);
        let d23 = dt(&d13);
        let d24 = dt(&d14);
        let d31 = dt(&d21);
        DerivTable {
            entries: [
                f, f2, f3, f4, f22, f23, f24, f33, f34, f44, f222, f223, f224, f233, f234, f244,
                f333, f334, f344, f444, d11, d12, d13, d14, d15, d16, d17, d18, d19, d110, d21,
                d22, d23, d24, d31,
            ],
        }
    }

    pub fn get(&self, z: Z) -> &Expr {
        &self.entries[z.index()]
    }

    /// Evaluates every entry at a point; `Singular` entries mark points
    /// where some denominator of the table vanishes.
    pub fn eval_at(&self, point: &Assignment, ctx: &EvalCtx) -> [Val; 35] {
        self.entries
            .each_ref()
            .map(|e| match evaluate(e, point, ctx) {
                Ok(v) => Val::Num(v),
                Err(_) => Val::Singular,
            })
    }
}

/// Computes the table for an ODE (cached on the spec).
pub fn derivative_table(ode: &OdeSpec) -> Arc<DerivTable> {
    ode.table()
}

#[cfg(test)]
mod tests {
    use super::*;
    use symex::simplify;

    fn ode(src: &str) -> OdeSpec {
        OdeSpec::parse(src).unwrap()
    }

    fn expr(src: &str) -> Expr {
        symex::parse(src).unwrap()
    }

    #[test]
    fn total_derivative_basics() {
        let o = ode("q^3");
        assert_eq!(total_derivative(&expr("p"), &o), expr("q"));
        assert_eq!(total_derivative(&expr("q"), &o), expr("q^3"));
        // for f = q^3: Dx(f4) = Dx(3q^2) = 6q * f = 6q^4
        let got = total_derivative(&expr("3*q^2"), &o);
        assert!(simplify(&Expr::sub(&got, &expr("6*q^4"))).is_zero());
    }

    #[test]
    fn cubic_table() {
        let o = ode("q^3");
        let t = o.table();
        assert!(simplify(&Expr::sub(t.get(Z::F4), &expr("3*q^2"))).is_zero());
        assert!(simplify(&Expr::sub(t.get(Z::F44), &expr("6*q"))).is_zero());
        assert!(simplify(&Expr::sub(t.get(Z::F444), &expr("6"))).is_zero());
        for z in [Z::F2, Z::F3, Z::F23, Z::F33, Z::F234] {
            assert!(t.get(z).is_zero(), "{z:?} should vanish for q^3");
        }
        assert!(simplify(&Expr::sub(t.get(Z::D14), &expr("6*q^4"))).is_zero());
    }

    #[test]
    fn quartic_third_derivative() {
        let t = ode("q^4").table();
        assert!(simplify(&Expr::sub(t.get(Z::F444), &expr("24*q"))).is_zero());
    }

    #[test]
    fn d_column_of_parameterized_ode() {
        // f = A x^3 q^4: d11 = 3A x^2 q^4 + 4A^2 x^6 q^7
        let t = ode("A*x^3*q^4").table();
        let expect = expr("3*A*x^2*q^4 + 4*A^2*x^6*q^7");
        assert!(simplify(&Expr::sub(t.get(Z::D11), &expect)).is_zero());
    }

    #[test]
    fn clairaut_symmetry() {
        // mixed partials computed in both orders agree
        let o = ode("3*q^2/p + A*q^3/p^5");
        let f = o.f().clone();
        let dqp = differentiate(&differentiate(&f, VAR_Q), VAR_P);
        let dpq = differentiate(&differentiate(&f, VAR_P), VAR_Q);
        assert!(simplify(&Expr::sub(&dqp, &dpq)).is_zero());
        let t = o.table();
        assert!(simplify(&Expr::sub(t.get(Z::F34), &simplify(&dqp))).is_zero());
    }

    #[test]
    fn xy_free_ode_has_xy_free_columns() {
        let t = ode("3*q^2/p + A*q^3/p^5").table();
        for z in Z_ALL {
            let e = t.get(z);
            assert!(
                e.is_free_of(VAR_X) && e.is_free_of(VAR_Y),
                "{z:?} = {e} mentions x or y"
            );
        }
    }

    #[test]
    fn rejects_undeclared_symbols() {
        let f = expr("B*q^3");
        assert!(OdeSpec::new(f, &[]).is_err());
    }
}
