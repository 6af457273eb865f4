//! Fiber-preserving transformations `x̄ = φ(x), ȳ = ψ(x, y)` acting on
//! ODEs and jet points, plus the randomized invariance harness.
//!
//! `pushforward_ode` rewrites an ODE given in the barred variables into
//! the plain ones. With `D0 = ∂x + p ∂y + q ∂p`, the prolonged
//! coordinates are
//!
//! ```text
//! p̄ = (ψx + p ψy)/φ',   q̄ = D0(p̄)/φ' + q ∂p(p̄)/φ',
//! ȳ''' = (D0(q̄) + q ∂p(q̄) ... + y''' ∂q(q̄))/φ',
//! ```
//!
//! and setting `ȳ''' = f̄(φ, ψ, p̄, q̄)` solves linearly for `y'''`: no
//! inversion of φ or ψ is ever needed in this direction. The opposite
//! direction is obtained by pushing forward along the inverse transform,
//! which exists in closed form for the affine / Möbius / log / exp
//! families (or can be supplied explicitly).

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symex::normalize::simplify_factored;
use symex::rat::Rat;
use symex::zero::Trit;
use symex::{
    differentiate, equals_zero, evaluate, substitute_pairs, Assignment, Constraint, EvalCtx, Expr,
    ExprKind, NumValue, ZeroPolicy,
};

use crate::error::OdeError;
use crate::invariants::{alpha_values, beta_values};
use crate::jet::{OdeSpec, VAR_P, VAR_Q, VAR_X, VAR_Y};
use crate::scalar::Val;

/// A fiber-preserving transformation: `x̄ = φ(x)` free of `y`, and
/// `ȳ = ψ(x, y)` with `ψ_y != 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberTransform {
    phi: Expr,
    psi: Expr,
}

impl FiberTransform {
    pub fn new(phi: Expr, psi: Expr) -> Result<FiberTransform, OdeError> {
        if !phi.is_free_of(VAR_Y) {
            return Err(OdeError::DegenerateTransform(format!(
                "phi = {phi} must depend on x alone"
            )));
        }
        let dphi = differentiate(&phi, VAR_X);
        if equals_zero(&dphi, &ZeroPolicy::default()) == Trit::Yes {
            return Err(OdeError::DegenerateTransform(format!(
                "phi' vanishes identically for phi = {phi}"
            )));
        }
        let psi_y = differentiate(&psi, VAR_Y);
        if equals_zero(&psi_y, &ZeroPolicy::default()) == Trit::Yes {
            return Err(OdeError::DegenerateTransform(format!(
                "psi_y vanishes identically for psi = {psi}"
            )));
        }
        Ok(FiberTransform { phi, psi })
    }

    pub fn parse(phi: &str, psi: &str) -> Result<FiberTransform, OdeError> {
        Ok(FiberTransform::new(symex::parse(phi)?, symex::parse(psi)?)?)
    }

    pub fn identity() -> FiberTransform {
        FiberTransform {
            phi: Expr::sym(VAR_X),
            psi: Expr::sym(VAR_Y),
        }
    }

    pub fn phi(&self) -> &Expr {
        &self.phi
    }

    pub fn psi(&self) -> &Expr {
        &self.psi
    }

    pub fn is_identity_on_x(&self) -> bool {
        self.phi == Expr::sym(VAR_X)
    }

    /// Composition `self ∘ other`: apply `other` first.
    pub fn after(&self, other: &FiberTransform) -> Result<FiberTransform, OdeError> {
        let phi = substitute_pairs(&self.phi, &[(VAR_X, other.phi.clone())]);
        let psi = substitute_pairs(
            &self.psi,
            &[(VAR_X, other.phi.clone()), (VAR_Y, other.psi.clone())],
        );
        FiberTransform::new(phi, psi)
    }

    /// The prolonged coordinates `(p̄, q̄)` as expressions in
    /// `(x, y, p, q)`.
    pub fn prolong(&self) -> (Expr, Expr) {
        let dphi = differentiate(&self.phi, VAR_X);
        let psi_x = differentiate(&self.psi, VAR_X);
        let psi_y = differentiate(&self.psi, VAR_Y);
        let p = Expr::sym(VAR_P);
        let q = Expr::sym(VAR_Q);
        let pbar = Expr::div(&Expr::add(&psi_x, &Expr::mul(&p, &psi_y)), &dphi);
        // q̄ = (∂x + p ∂y + q ∂p)(p̄) / φ'
        let d0 = |e: &Expr| {
            Expr::add_all(&[
                differentiate(e, VAR_X),
                Expr::mul(&p, &differentiate(e, VAR_Y)),
                Expr::mul(&q, &differentiate(e, VAR_P)),
            ])
        };
        let qbar = Expr::div(&d0(&pbar), &dphi);
        (simplify_factored(&pbar), simplify_factored(&qbar))
    }

    /// The substitution `{x -> φ, y -> ψ, p -> p̄, q -> q̄}` that rewrites
    /// a function of the barred variables in the plain ones.
    pub fn jet_substitution(&self) -> Vec<(&'static str, Expr)> {
        let (pbar, qbar) = self.prolong();
        vec![
            (VAR_X, self.phi.clone()),
            (VAR_Y, self.psi.clone()),
            (VAR_P, pbar),
            (VAR_Q, qbar),
        ]
    }

    /// Closed-form inverse. `phi_inverse_hint`, when given, is used for
    /// `x = φ⁻¹(x̄)` after verification; otherwise φ must be affine,
    /// Möbius, `ln`-affine or `exp`-affine. ψ must be affine in y.
    pub fn inverse(&self, phi_inverse_hint: Option<&Expr>) -> Result<FiberTransform, OdeError> {
        let phi_inv = match phi_inverse_hint {
            Some(h) => {
                verify_inverse(&self.phi, h)?;
                h.clone()
            }
            None => invert_univariate(&self.phi)?,
        };
        // psi = a(x) + b(x) y  =>  y = (ȳ - a(φ⁻¹))/b(φ⁻¹)
        let psi_y = differentiate(&self.psi, VAR_Y);
        if !psi_y.is_free_of(VAR_Y) {
            return Err(OdeError::NotInvertible(format!(
                "psi = {} is not affine in y",
                self.psi
            )));
        }
        let a = substitute_pairs(&self.psi, &[(VAR_Y, Expr::zero())]);
        let a_at = substitute_pairs(&a, &[(VAR_X, phi_inv.clone())]);
        let b_at = substitute_pairs(&psi_y, &[(VAR_X, phi_inv.clone())]);
        let psi_inv = simplify_factored(&Expr::div(&Expr::sub(&Expr::sym(VAR_Y), &a_at), &b_at));
        FiberTransform::new(phi_inv, psi_inv)
    }
}

/// Checks `phi(hint(x)) = x`, symbolically first and numerically as a
/// fallback.
fn verify_inverse(phi: &Expr, hint: &Expr) -> Result<(), OdeError> {
    let comp = substitute_pairs(phi, &[(VAR_X, hint.clone())]);
    let diff = Expr::sub(&comp, &Expr::sym(VAR_X));
    match equals_zero(&diff, &ZeroPolicy::default()) {
        Trit::Yes => Ok(()),
        Trit::No => Err(OdeError::NotInvertible(format!(
            "supplied inverse fails: phi({hint}) != x for phi = {phi}"
        ))),
        Trit::Unknown => Err(OdeError::NotInvertible(format!(
            "cannot verify supplied inverse {hint} for phi = {phi}"
        ))),
    }
}

/// Symbolic inversion of `x̄ = φ(x)` for the closed-form families:
/// affine, Möbius `(a x + b)/(c x + d)`, `ln(affine)`, `exp(affine)`.
fn invert_univariate(phi: &Expr) -> Result<Expr, OdeError> {
    let x = Expr::sym(VAR_X);
    // ln(u(x)) -> u^{-1}(exp(x̄))
    if let ExprKind::Ln(inner) = phi.kind() {
        let inner_inv = invert_univariate(inner)?;
        return Ok(simplify_factored(&substitute_pairs(
            &inner_inv,
            &[(VAR_X, Expr::exp_of(&x))],
        )));
    }
    // exp-affine: detect  phi = exp(u)  via a pure Exp power factor
    if let ExprKind::Exp(_) = phi.kind() {
        let u = Expr::ln_of(phi);
        if u.is_free_of("__nope__") {
            let u_inv = invert_univariate(&u)?;
            return Ok(simplify_factored(&substitute_pairs(
                &u_inv,
                &[(VAR_X, Expr::ln_of(&x))],
            )));
        }
    }
    // Rational case: phi = N(x)/D(x) with both affine in x.
    // Solve N(x) = x̄ D(x)  =>  x = (d x̄ - b)/(a - c x̄) for
    // phi = (a x + b)/(c x + d).
    let (num, den) = as_num_den(phi);
    let (a, b) = affine_coeffs(&num)?;
    let (c, d) = affine_coeffs(&den)?;
    // x = (d x̄ - b) / (a - c x̄)
    let num_inv = Expr::sub(&Expr::mul(&d, &x), &b);
    let den_inv = Expr::sub(&a, &Expr::mul(&c, &x));
    if equals_zero(&den_inv, &ZeroPolicy::default()) == Trit::Yes {
        return Err(OdeError::NotInvertible(format!("phi = {phi}")));
    }
    Ok(simplify_factored(&Expr::div(&num_inv, &den_inv)))
}

fn as_num_den(e: &Expr) -> (Expr, Expr) {
    let s = symex::simplify(e);
    let mut num = Vec::new();
    let mut den = Vec::new();
    let factors: Vec<Expr> = match s.kind() {
        ExprKind::Prod(cs) => cs.clone(),
        _ => vec![s.clone()],
    };
    for f in factors {
        let (b, ex) = f.base_exp();
        if num_traits::Signed::is_negative(&ex) {
            den.push(Expr::pow(&b, -ex));
        } else {
            num.push(f);
        }
    }
    (Expr::mul_all(&num), Expr::mul_all(&den))
}

/// Writes `e = a*x + b` or fails.
fn affine_coeffs(e: &Expr) -> Result<(Expr, Expr), OdeError> {
    let a = differentiate(e, VAR_X);
    if !a.is_free_of(VAR_X) {
        return Err(OdeError::NotInvertible(format!("{e} is not affine in x")));
    }
    let b = substitute_pairs(e, &[(VAR_X, Expr::zero())]);
    Ok((a, b))
}

/// A jet point with exact rational coordinates, together with parameter
/// values where the ODE has symbolic parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct JetPoint {
    pub assignment: Assignment,
}

impl JetPoint {
    pub fn new(x: Rat, y: Rat, p: Rat, q: Rat) -> JetPoint {
        JetPoint {
            assignment: Assignment::new()
                .bind(VAR_X, x)
                .bind(VAR_Y, y)
                .bind(VAR_P, p)
                .bind(VAR_Q, q),
        }
    }

    pub fn coord(&self, name: &str) -> &Rat {
        self.assignment.get(name).expect("jet coordinate").value()
    }
}

/// Rewrites the ODE `ȳ''' = f̄(x̄, ȳ, ȳ', ȳ'')` (the input, in its own
/// barred variables) under `x̄ = φ(x), ȳ = ψ(x, y)`, returning the ODE
/// satisfied by `y(x)`. Purely symbolic; no inversion.
pub fn pushforward_ode(ode: &OdeSpec, t: &FiberTransform) -> Result<OdeSpec, OdeError> {
    let dphi = differentiate(t.phi(), VAR_X);
    let (pbar, qbar) = t.prolong();
    let p = Expr::sym(VAR_P);
    let q = Expr::sym(VAR_Q);
    let d0 = |e: &Expr| {
        Expr::add_all(&[
            differentiate(e, VAR_X),
            Expr::mul(&p, &differentiate(e, VAR_Y)),
            Expr::mul(&q, &differentiate(e, VAR_P)),
        ])
    };
    // ȳ''' = (D0(q̄) + y''' ∂q(q̄))/φ' = f̄(φ, ψ, p̄, q̄)
    let dq_qbar = differentiate(&qbar, VAR_Q);
    if equals_zero(&dq_qbar, &ZeroPolicy::default()) == Trit::Yes {
        return Err(OdeError::DegenerateTransform(
            "vanishing Jacobian in q".to_string(),
        ));
    }
    let fbar_sub = substitute_pairs(
        ode.f(),
        &[
            (VAR_X, t.phi().clone()),
            (VAR_Y, t.psi().clone()),
            (VAR_P, pbar),
            (VAR_Q, qbar.clone()),
        ],
    );
    let g = Expr::div(
        &Expr::sub(&Expr::mul(&fbar_sub, &dphi), &d0(&qbar)),
        &dq_qbar,
    );
    let g = simplify_factored(&g);
    let params: Vec<&str> = ode.params().iter().map(|s| &**s).collect();
    OdeSpec::new(g, &params)
}

/// Forward image of a jet point: `(φ(x0), ψ(x0,y0), p̄(pt), q̄(pt))`,
/// exactly. Errors when any coordinate fails to evaluate exactly (e.g.
/// `φ = ln x` at a point with irrational logarithm).
pub fn pushforward_point(pt: &JetPoint, t: &FiberTransform) -> Result<JetPoint, OdeError> {
    let ctx = EvalCtx::default();
    let (pbar, qbar) = t.prolong();
    let mut coords = Vec::with_capacity(4);
    for e in [t.phi(), t.psi(), &pbar, &qbar] {
        match evaluate(e, &pt.assignment, &ctx)? {
            NumValue::Exact(r) => coords.push(r),
            NumValue::Approx(_) => {
                return Err(OdeError::NotInvertible(format!(
                    "transformed coordinate {e} is irrational at the point"
                )))
            }
        }
    }
    let mut out = JetPoint::new(
        coords[0].clone(),
        coords[1].clone(),
        coords[2].clone(),
        coords[3].clone(),
    );
    // Carry parameter bindings through unchanged.
    for (name, v) in pt.assignment.iter() {
        if !matches!(&**name, VAR_X | VAR_Y | VAR_P | VAR_Q) {
            out.assignment = out.assignment.bind_value(name, v.clone());
        }
    }
    Ok(out)
}

/// Deterministic random fiber-preserving transform. `degree_bound = 1`
/// gives affine transforms `x̄ = a x + b, ȳ = c y + d x + e`; higher
/// bounds add polynomial terms in `x` and (from degree 2) an optional
/// `y^2` term. `φ'` and `ψ_y` are kept positive on the sampling box by
/// construction.
pub fn random_fiber_transform(seed: u64, degree_bound: u32) -> FiberTransform {
    assert!(degree_bound >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let small_pos = |rng: &mut ChaCha8Rng| {
        Rat::new(
            BigInt::from(rng.gen_range(1..=4)),
            BigInt::from(rng.gen_range(1..=3)),
        )
    };
    let small_any = |rng: &mut ChaCha8Rng| {
        Rat::new(
            BigInt::from(rng.gen_range(-3i64..=3)),
            BigInt::from(rng.gen_range(1..=3)),
        )
    };
    let x = Expr::sym(VAR_X);
    let y = Expr::sym(VAR_Y);
    // phi' = sum of nonnegative-coefficient monomials with positive
    // constant term, so phi is strictly monotone on x > 0.
    let deg = rng.gen_range(1..=degree_bound);
    let mut dphi_terms = vec![Expr::num(small_pos(&mut rng))];
    for k in 1..deg {
        if rng.gen_bool(0.7) {
            let c = small_pos(&mut rng);
            dphi_terms.push(Expr::mul(&Expr::num(c), &Expr::powi(&x, k as i64)));
        }
    }
    // integrate and add a free constant term
    let mut phi_terms = vec![Expr::num(small_any(&mut rng))];
    for t in &dphi_terms {
        let (c, core) = t.coeff_core();
        let k = if core.is_one() {
            0
        } else {
            let (_, e) = core.base_exp();
            num_traits::ToPrimitive::to_i64(e.numer()).unwrap_or(0)
        };
        let integrated = Expr::mul(
            &Expr::num(c / Rat::from_integer(BigInt::from(k + 1))),
            &Expr::powi(&x, k + 1),
        );
        phi_terms.push(integrated);
    }
    let phi = Expr::add_all(&phi_terms);
    // psi = a(x) + b y + c y^2 with b > 0 and c >= 0 (kept small), so
    // psi_y = b + 2 c y > 0 on the box.
    let mut a_terms = vec![Expr::num(small_any(&mut rng))];
    for k in 1..=deg.min(2) {
        if rng.gen_bool(0.6) {
            a_terms.push(Expr::mul(
                &Expr::num(small_any(&mut rng)),
                &Expr::powi(&x, k as i64),
            ));
        }
    }
    let b = small_pos(&mut rng);
    let mut psi = Expr::add(&Expr::add_all(&a_terms), &Expr::mul(&Expr::num(b), &y));
    if degree_bound >= 2 && rng.gen_bool(0.4) {
        let c = small_pos(&mut rng) / Rat::from_integer(BigInt::from(8));
        psi = Expr::add(&psi, &Expr::mul(&Expr::num(c), &Expr::powi(&y, 2)));
    }
    FiberTransform::new(phi, psi).expect("constructed transform is nondegenerate")
}

/// Which invariant family the harness checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvarianceKind {
    /// The eleven β under general fiber-preserving transforms.
    Beta,
    /// The seventeen α; the transform must fix x.
    Alpha,
}

#[derive(Debug, Clone)]
pub struct InvarianceCfg {
    pub n_points: usize,
    /// Relative tolerance on approximate paths; exact paths must match
    /// exactly.
    pub tolerance: Rat,
    pub seed: u64,
    pub digits: u32,
}

impl Default for InvarianceCfg {
    fn default() -> Self {
        InvarianceCfg {
            n_points: 50,
            tolerance: Rat::new(BigInt::from(1), BigInt::from(10).pow(25)),
            seed: 0x1f2e,
            digits: 50,
        }
    }
}

#[derive(Debug, Clone)]
pub struct InvarianceReport {
    pub kind: InvarianceKind,
    pub points_checked: usize,
    /// Per-invariant outcome: (index, passed, witness point on failure).
    pub outcomes: Vec<(usize, bool, Option<JetPoint>)>,
}

impl InvarianceReport {
    pub fn all_pass(&self) -> bool {
        self.outcomes.iter().all(|(_, ok, _)| *ok)
    }
}

/// The randomized invariance check: for the input ODE (in barred
/// variables) and its pushforward under `t`, the invariants evaluated at
/// `Φ(pt)` on the input side must equal the pushforward's invariants at
/// `pt` — exactly on rational-closed paths, within tolerance otherwise.
pub fn invariance_check(
    ode: &OdeSpec,
    t: &FiberTransform,
    kind: InvarianceKind,
    cfg: &InvarianceCfg,
) -> Result<InvarianceReport, OdeError> {
    if kind == InvarianceKind::Alpha && !t.is_identity_on_x() {
        return Err(OdeError::DegenerateTransform(
            "alpha invariance requires a transform with x̄ = x".to_string(),
        ));
    }
    let pushed = pushforward_ode(ode, t)?;
    let t_in = ode.table();
    let t_out = pushed.table();
    let ctx = EvalCtx::with_digits(cfg.digits);

    // Valid points must avoid the pushforward's denominators and the
    // transform's Jacobian zeros; singular invariant chains are skipped
    // and resampled via a generous budget.
    let mut constraints: Vec<Constraint> = pushed.constraints().to_vec();
    constraints.extend(ode.constraints().iter().cloned());
    let dphi = differentiate(t.phi(), VAR_X);
    let psi_y = differentiate(t.psi(), VAR_Y);
    constraints.push(Constraint::NonZero(dphi));
    constraints.push(Constraint::NonZero(psi_y));
    let mut scfg = symex::SampleCfg::with_seed(cfg.seed);
    scfg.digits = cfg.digits;
    scfg.budget = 200 * cfg.n_points.max(10);
    let symbols = pushed.all_symbols();

    let indices: Vec<usize> = match kind {
        InvarianceKind::Beta => (1..=11).collect(),
        InvarianceKind::Alpha => (1..=17).collect(),
    };
    let mut outcomes: Vec<(usize, bool, Option<JetPoint>)> =
        indices.iter().map(|&i| (i, true, None)).collect();
    let mut checked = 0;
    let candidates = symex::sample_points(&symbols, &constraints, &scfg, cfg.n_points * 3);
    for a in candidates {
        if checked >= cfg.n_points {
            break;
        }
        let pt = JetPoint { assignment: a };
        let Ok(bar_pt) = pushforward_point(&pt, t) else {
            continue;
        };
        let (lhs, rhs): (Vec<(usize, Val)>, Vec<(usize, Val)>) = match kind {
            InvarianceKind::Beta => (
                beta_values(&t_in, &bar_pt.assignment, &ctx)
                    .iter()
                    .map(|(i, v)| (i, v.clone()))
                    .collect(),
                beta_values(&t_out, &pt.assignment, &ctx)
                    .iter()
                    .map(|(i, v)| (i, v.clone()))
                    .collect(),
            ),
            InvarianceKind::Alpha => (
                alpha_values(&t_in, &bar_pt.assignment, &ctx)
                    .iter()
                    .map(|(i, v)| (i, v.clone()))
                    .collect(),
                alpha_values(&t_out, &pt.assignment, &ctx)
                    .iter()
                    .map(|(i, v)| (i, v.clone()))
                    .collect(),
            ),
        };
        if lhs.iter().any(|(_, v)| v.is_singular()) || rhs.iter().any(|(_, v)| v.is_singular()) {
            continue;
        }
        checked += 1;
        for (k, ((i, a), (_, b))) in lhs.iter().zip(rhs.iter()).enumerate() {
            let (va, vb) = (a.num().unwrap(), b.num().unwrap());
            let ok = match (va, vb) {
                (NumValue::Exact(ra), NumValue::Exact(rb)) => ra == rb,
                _ => {
                    let scale = std::cmp::max(
                        Rat::from_integer(BigInt::from(1)),
                        num_traits::Signed::abs(vb.value()),
                    );
                    num_traits::Signed::abs(&(va.value() - vb.value())) <= &cfg.tolerance * scale
                }
            };
            if !ok && outcomes[k].1 {
                outcomes[k] = (*i, false, Some(pt.clone()));
            }
        }
    }
    if checked == 0 {
        return Err(OdeError::SamplingExhausted(
            "no valid jet points for the invariance check".to_string(),
        ));
    }
    Ok(InvarianceReport {
        kind,
        points_checked: checked,
        outcomes,
    })
}

/// Symbolic invariance identity: `β_i[ode] ∘ Φ - β_i[pushforward] = 0`
/// for every i, via the zero oracle. Stronger than the pointwise check;
/// used where the worked examples assert exact identities.
pub fn invariance_identity(
    ode: &OdeSpec,
    t: &FiberTransform,
) -> Result<Vec<(usize, Trit)>, OdeError> {
    let pushed = pushforward_ode(ode, t)?;
    let b_in = crate::invariants::beta_invariants(ode)?;
    let b_out = crate::invariants::beta_invariants(&pushed)?;
    let sub = t.jet_substitution();
    let mut out = Vec::with_capacity(11);
    for (i, e) in b_in.iter() {
        let composed = substitute_pairs(e, &sub);
        let diff = Expr::sub(&composed, b_out.get(i));
        out.push((i, equals_zero(&diff, &ZeroPolicy::default())));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use symex::rat::rat_i;
    use symex::simplify;

    fn ode(src: &str) -> OdeSpec {
        OdeSpec::parse(src).unwrap()
    }

    fn expr(src: &str) -> Expr {
        symex::parse(src).unwrap()
    }

    #[test]
    fn identity_transform_is_neutral() {
        let o = ode("A*q^3");
        let t = FiberTransform::identity();
        let pushed = pushforward_ode(&o, &t).unwrap();
        assert!(simplify(&Expr::sub(pushed.f(), o.f())).is_zero());
        let pt = JetPoint::new(rat_i(1), rat_i(2), rat_i(3), rat_i(4));
        assert_eq!(pushforward_point(&pt, &t).unwrap(), pt);
    }

    #[test]
    fn log_transform_reproduces_worked_equation() {
        // f̄ = A q̄^3 under x̄ = ln x, ȳ = x + y gives
        // x^3 y''' + 3x^2 y'' + x y' + x = A (x + x y' + x^2 y'')^3.
        let o = ode("A*q^3");
        let t = FiberTransform::parse("ln(x)", "x + y").unwrap();
        let pushed = pushforward_ode(&o, &t).unwrap();
        let expect = expr("(A*(x + x*p + x^2*q)^3 - 3*x^2*q - x*p - x)/x^3");
        assert!(
            simplify(&Expr::sub(pushed.f(), &expect)).is_zero(),
            "got {}",
            pushed.f()
        );
    }

    #[test]
    fn mobius_transform_reproduces_worked_equation() {
        // f̄ = A x̄^3 q̄^4 under x̄ = 1/x, ȳ = y/x gives
        // y''' = -A x^4 y''^4 - 3 y''/x.
        let o = ode("A*x^3*q^4");
        let t = FiberTransform::parse("1/x", "y/x").unwrap();
        let pushed = pushforward_ode(&o, &t).unwrap();
        let expect = expr("-A*x^4*q^4 - 3*q/x");
        assert!(
            simplify(&Expr::sub(pushed.f(), &expect)).is_zero(),
            "got {}",
            pushed.f()
        );
    }

    #[test]
    fn point_pushforward_by_chain_rule() {
        // x̄ = ln x, ȳ = x + y at (1, 0, 1, 1): p̄ = x(1 + p) = 2,
        // q̄ = x(1 + p) + x^2 q = 3.
        let t = FiberTransform::parse("ln(x)", "x + y").unwrap();
        let pt = JetPoint::new(rat_i(1), rat_i(0), rat_i(1), rat_i(1));
        let out = pushforward_point(&pt, &t).unwrap();
        assert_eq!(out.coord(VAR_X), &rat_i(0));
        assert_eq!(out.coord(VAR_Y), &rat_i(1));
        assert_eq!(out.coord(VAR_P), &rat_i(2));
        assert_eq!(out.coord(VAR_Q), &rat_i(3));
    }

    #[test]
    fn composition_functoriality() {
        let t1 = random_fiber_transform(11, 1);
        let t2 = random_fiber_transform(22, 1);
        let composed = t2.after(&t1).unwrap();
        let pt = JetPoint::new(rat_i(1), rat_i(2), rat_i(1), rat_i(2));
        let a = pushforward_point(&pushforward_point(&pt, &t1).unwrap(), &t2).unwrap();
        let b = pushforward_point(&pt, &composed).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn group_property_on_odes() {
        let o = ode("q^3 + y");
        for seed in [5u64, 6, 7] {
            let t1 = random_fiber_transform(seed, 1);
            let t2 = random_fiber_transform(seed + 100, 1);
            // Pushing forward along t1-then-t2 equals pushing along the
            // composite t1 ∘ t2 (the inner transform is applied to the
            // output side first).
            let once = pushforward_ode(&pushforward_ode(&o, &t1).unwrap(), &t2).unwrap();
            let composed = t1.after(&t2).unwrap();
            let direct = pushforward_ode(&o, &composed).unwrap();
            assert!(
                simplify(&Expr::sub(once.f(), direct.f())).is_zero(),
                "seed {seed}: {} vs {}",
                once.f(),
                direct.f()
            );
        }
    }

    #[test]
    fn inverse_roundtrip_affine() {
        for seed in [1u64, 2, 3, 4] {
            let t = random_fiber_transform(seed, 1);
            let inv = t.inverse(None).unwrap();
            let o = ode("q^3 + p");
            let there = pushforward_ode(&o, &t).unwrap();
            let back = pushforward_ode(&there, &inv).unwrap();
            assert!(
                simplify(&Expr::sub(back.f(), o.f())).is_zero(),
                "roundtrip failed for seed {seed}: {}",
                back.f()
            );
        }
    }

    #[test]
    fn inverse_families() {
        // Möbius self-inverse x/(x-1)
        let t = FiberTransform::parse("x/(x - 1)", "y/(x - 1)").unwrap();
        let inv = t.inverse(None).unwrap();
        assert!(simplify(&Expr::sub(inv.phi(), &expr("x/(x - 1)"))).is_zero());
        // ln with explicit inverse hint
        let t2 = FiberTransform::parse("ln(x)", "x + y").unwrap();
        let inv2 = t2.inverse(Some(&Expr::exp_of(&Expr::sym(VAR_X)))).unwrap();
        assert!(simplify(&Expr::sub(inv2.phi(), &Expr::exp_of(&Expr::sym(VAR_X)))).is_zero());
        // and ln inverts symbolically without the hint
        let inv3 = t2.inverse(None).unwrap();
        assert!(simplify(&Expr::sub(inv3.phi(), &Expr::exp_of(&Expr::sym(VAR_X)))).is_zero());
    }

    #[test]
    fn degenerate_transforms_rejected() {
        assert!(FiberTransform::parse("2", "y").is_err()); // phi' = 0
        assert!(FiberTransform::parse("x", "x").is_err()); // psi_y = 0
        assert!(FiberTransform::parse("x + y", "y").is_err()); // phi depends on y
    }

    #[test]
    fn invariance_pointwise_cubic() {
        let o = ode("q^3");
        let t = random_fiber_transform(41, 2);
        let rep = invariance_check(&o, &t, InvarianceKind::Beta, &InvarianceCfg::default())
            .unwrap();
        assert!(rep.all_pass(), "{:?}", rep.outcomes);
        assert!(rep.points_checked >= 10);
    }
}
