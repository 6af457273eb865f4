//! The invariant chains: relative invariants λ4..λ20, the γ-chain
//! γ4..γ16, the seventeen point-subgroup invariants α1..α17 and the
//! eleven fiber-preserving invariants β1..β11.
//!
//! Every formula is written once over a generic scalar, so the symbolic
//! path (expressions), the numeric path (exact point evaluation) and the
//! free-symbol path used by the Lie-algebra annihilation checks all go
//! through the same code. Each term below mirrors one printed term of
//! the corresponding table, which keeps the transcription auditable.

use num_traits::Signed;
use symex::normalize::simplify_factored;
use symex::rat::Rat;
use symex::zero::Trit;
use symex::{equals_zero, evaluate, simplify, Assignment, EvalCtx, Expr, NumValue, ZeroPolicy};

use crate::error::OdeError;
use crate::jet::{DerivTable, OdeSpec, Z, VAR_X};
use crate::scalar::{lc, Scalar, Val};

/// λ4..λ20, indexed 4..=20.
#[derive(Debug, Clone)]
pub struct LambdaSet<T> {
    vals: Vec<T>,
}

/// γ4..γ16, indexed 4..=16. γ1..γ3 are the coordinates x, y, p.
#[derive(Debug, Clone)]
pub struct GammaSet<T> {
    vals: Vec<T>,
}

/// α1..α17, indexed 1..=17.
#[derive(Debug, Clone)]
pub struct AlphaSet<T> {
    vals: Vec<T>,
}

/// β1..β11, indexed 1..=11.
#[derive(Debug, Clone)]
pub struct BetaSet<T> {
    vals: Vec<T>,
}

macro_rules! indexed_set {
    ($name:ident, $lo:expr, $hi:expr) => {
        impl<T> $name<T> {
            pub fn get(&self, i: usize) -> &T {
                assert!(($lo..=$hi).contains(&i));
                &self.vals[i - $lo]
            }

            pub fn iter(&self) -> impl Iterator<Item = (usize, &T)> {
                self.vals.iter().enumerate().map(|(k, v)| (k + $lo, v))
            }

            pub fn len(&self) -> usize {
                self.vals.len()
            }

            pub fn is_empty(&self) -> bool {
                false
            }

            pub fn map<U>(&self, f: impl Fn(&T) -> U) -> $name<U> {
                $name {
                    vals: self.vals.iter().map(f).collect(),
                }
            }

            pub fn from_fn(f: impl Fn(usize) -> T) -> $name<T> {
                $name {
                    vals: ($lo..=$hi).map(f).collect(),
                }
            }
        }
    };
}

indexed_set!(LambdaSet, 4, 20);
indexed_set!(GammaSet, 4, 16);
indexed_set!(AlphaSet, 1, 17);
indexed_set!(BetaSet, 1, 11);

/// The relative invariants λ4..λ20 from a derivative table.
pub fn lambda_chain<T: Scalar>(g: &impl Fn(Z) -> T) -> LambdaSet<T> {
    let f2 = &g(Z::F2);
    let f3 = &g(Z::F3);
    let f4 = &g(Z::F4);
    let f22 = &g(Z::F22);
    let f23 = &g(Z::F23);
    let f24 = &g(Z::F24);
    let f33 = &g(Z::F33);
    let f34 = &g(Z::F34);
    let f44 = &g(Z::F44);
    let f233 = &g(Z::F233);
    let f234 = &g(Z::F234);
    let f224 = &g(Z::F224);
    let f244 = &g(Z::F244);
    let f333 = &g(Z::F333);
    let f334 = &g(Z::F334);
    let f344 = &g(Z::F344);
    let f444 = &g(Z::F444);
    let d12 = &g(Z::D12);
    let d13 = &g(Z::D13);
    let d14 = &g(Z::D14);
    let d16 = &g(Z::D16);
    let d17 = &g(Z::D17);
    let d18 = &g(Z::D18);
    let d19 = &g(Z::D19);
    let d110 = &g(Z::D110);
    let d23 = &g(Z::D23);
    let d24 = &g(Z::D24);

    let l4 = f44.clone();
    let l5 = lc(&[(2, &[f34, f4]), (-2, &[f3, f44]), (-6, &[f24]), (3, &[f33])], 3);
    let l6 = f444.clone();
    let l7 = lc(&[(2, &[f4, f444]), (3, &[f344])], 3);
    let l8 = lc(
        &[
            (4, &[f444, f4, f4]),
            (12, &[f4, f344]),
            (4, &[f4, f44, f44]),
            (9, &[f334]),
            (6, &[f34, f44]),
        ],
        9,
    );
    let l9 = lc(
        &[
            (2, &[f444, f4, f4]),
            (2, &[f4, f44, f44]),
            (3, &[f4, f344]),
            (3, &[f444, f3]),
            (9, &[f244]),
            (3, &[f34, f44]),
        ],
        9,
    );
    let l10 = lc(
        &[
            (-4, &[f4, f4, f344]),
            (4, &[f4, f444, f3]),
            (12, &[f4, f244]),
            (-12, &[f334, f4]),
            (-4, &[f4, f34, f44]),
            (-6, &[f34, f34]),
            (-9, &[f333]),
            (4, &[f44, f44, f3]),
            (6, &[f3, f344]),
            (12, &[f24, f44]),
            (18, &[f234]),
        ],
        18,
    );
    let l11 = lc(
        &[
            (-4, &[f4, f3, f44, f44]),
            (-6, &[f44, f34, f3]),
            (-18, &[f44, f23]),
            (-12, &[f44, f24, f4]),
            (4, &[f44, f34, f4, f4]),
            (-6, &[f444, f3, f3]),
            (-36, &[f3, f244]),
            (-4, &[f3, f444, f4, f4]),
            (9, &[f3, f334]),
            (12, &[f34, f34, f4]),
            (9, &[f34, f33]),
            (4, &[f4, f4, f4, f344]),
            (-12, &[f4, f4, f244]),
            (12, &[f334, f4, f4]),
            (9, &[f4, f333]),
            (-54, &[f224]),
            (27, &[f233]),
        ],
        27,
    );
    let l12 = lc(&[(-1, &[f4, f4]), (-3, &[f3]), (3, &[d14])], 3);
    let l13 = lc(
        &[
            (-2, &[f4, f4, f4]),
            (-9, &[f4, f3]),
            (6, &[f4, d14]),
            (-27, &[f2]),
            (9, &[d13]),
        ],
        9,
    );
    let l14 = lc(&[(3, &[d110]), (1, &[f44, f4])], 3);
    let l15 = lc(
        &[
            (2, &[f44, f4, f4]),
            (3, &[f3, f44]),
            (6, &[f4, d110]),
            (-9, &[f24]),
            (9, &[d19]),
        ],
        9,
    );
    let l16 = lc(
        &[
            (4, &[f4, f4, d110]),
            (-2, &[f4, f4, f34]),
            (-3, &[f4, f33]),
            (12, &[f4, d19]),
            (4, &[f4, f44, d14]),
            (-12, &[f24, f4]),
            (6, &[f34, d14]),
            (-18, &[f23]),
            (9, &[d18]),
        ],
        9,
    );
    let l17 = lc(
        &[
            (2, &[f44, f4, f4, f4]),
            (-6, &[f4, f4, f34]),
            (6, &[f4, f4, d110]),
            (-9, &[f4, f33]),
            (12, &[f4, f3, f44]),
            (9, &[f4, d19]),
            (-9, &[f24, f4]),
            (9, &[f3, d110]),
            (-27, &[f23]),
            (27, &[f2, f44]),
            (27, &[d17]),
        ],
        27,
    );
    let l18 = lc(
        &[
            (-9, &[f3, f3, f44]),
            (9, &[f3, d19]),
            (6, &[f3, f4, d110]),
            (6, &[f3, f44, d14]),
            (6, &[f3, f34, f4]),
            (-54, &[f3, f24]),
            (9, &[f3, f33]),
            (4, &[f44, f4, f4, d14]),
            (6, &[f34, f4, d14]),
            (18, &[f24, d14]),
            (27, &[f2, f34]),
            (-2, &[f34, f4, f4, f4]),
            (-30, &[f4, f4, f24]),
            (18, &[f4, f44, f2]),
            (4, &[f4, f4, f4, d110]),
            (12, &[f4, f4, d19]),
            (-3, &[f4, f4, f33]),
            (9, &[f4, d18]),
            (18, &[f4, d17]),
            (-45, &[f4, f23]),
            (-81, &[f22]),
            (27, &[d16]),
        ],
        27,
    );
    let l19 = lc(
        &[
            (-2, &[f4, f4, f4]),
            (-9, &[f4, f3]),
            (-27, &[f2]),
            (9, &[d24]),
        ],
        9,
    );
    let l20 = lc(
        &[
            (-2, &[f4, f4, f4, f4]),
            (-12, &[f4, f4, f3]),
            (-6, &[f4, f4, d14]),
            (18, &[f4, d24]),
            (-27, &[f4, d13]),
            (-18, &[f3, f3]),
            (9, &[f3, d14]),
            (-81, &[d12]),
            (27, &[d23]),
        ],
        27,
    );

    LambdaSet {
        vals: vec![
            l4, l5, l6, l7, l8, l9, l10, l11, l12, l13, l14, l15, l16, l17, l18, l19, l20,
        ],
    }
}

/// The γ-chain from the λ set.
pub fn gamma_chain<T: Scalar>(l: &LambdaSet<T>) -> GammaSet<T> {
    let l4 = l.get(4);
    let l5 = l.get(5);
    let l6 = l.get(6);
    let l7 = l.get(7);
    let l8 = l.get(8);
    let l9 = l.get(9);
    let l10 = l.get(10);
    let l11 = l.get(11);
    let l12 = l.get(12);
    let l13 = l.get(13);
    let l14 = l.get(14);
    let l15 = l.get(15);
    let l16 = l.get(16);
    let l17 = l.get(17);
    let l18 = l.get(18);
    let l19 = l.get(19);

    let g4 = l4.clone();
    let g5 = l6.clone();
    let g6 = lc::<T>(&[(2, &[l4, l4, l7]), (3, &[l7, l7]), (-3, &[l6, l8])], 1)
        .neg()
        .div(&lc(&[(3, &[l6])], 1));
    let g7 = lc::<T>(
        &[
            (2, &[l4, l4, l4, l7]),
            (3, &[l7, l7, l4]),
            (-3, &[l6, l6, l5]),
            (-6, &[l6, l4, l9]),
        ],
        1,
    )
    .neg()
    .div(&lc(&[(6, &[l6, l4])], 1));
    let g8 = lc::<T>(
        &[
            (2, &[l6, l4, l5]),
            (6, &[l6, l10]),
            (-6, &[l7, l9]),
            (3, &[l7, l8]),
        ],
        1,
    )
    .div(&lc(&[(6, &[l6])], 1));
    let g9 = lc::<T>(
        &[
            (4, &[l6, l4, l4, l4, l7, l5]),
            (6, &[l4, l4, l6, l6, l11]),
            (12, &[l4, l4, l6, l7, l10]),
            (-6, &[l4, l4, l7, l7, l9]),
            (3, &[l4, l4, l7, l7, l8]),
            (3, &[l6, l6, l4, l5, l8]),
            (-12, &[l6, l6, l4, l5, l9]),
            (3, &[l6, l4, l5, l7, l7]),
            (-3, &[l6, l6, l6, l5, l5]),
        ],
        1,
    )
    .div(&lc(&[(6, &[l6, l6, l4, l4])], 1));
    let g10 = lc::<T>(&[(3, &[l5]), (1, &[l4, l12])], 1).div(&lc(&[(1, &[l4])], 1));
    let g11 = l14.clone();
    let g12 = lc::<T>(&[(1, &[l14, l7]), (1, &[l6, l5]), (-1, &[l6, l15])], 1)
        .neg()
        .div(&lc(&[(1, &[l6])], 1));
    let g13 = lc::<T>(
        &[
            (-3, &[l16, l6, l6]),
            (6, &[l6, l7, l15]),
            (2, &[l6, l7, l4, l12]),
            (-3, &[l14, l7, l7]),
        ],
        1,
    )
    .neg()
    .div(&lc(&[(3, &[l6, l6])], 1));
    let g14 = lc::<T>(
        &[
            (2, &[l4, l6, l6, l17]),
            (2, &[l4, l6, l7, l5]),
            (-2, &[l4, l6, l7, l15]),
            (1, &[l4, l14, l7, l7]),
            (1, &[l6, l6, l5, l14]),
        ],
        1,
    )
    .div(&lc(&[(2, &[l6, l6, l4])], 1));
    let g15 = lc::<T>(
        &[
            (2, &[l6, l6, l6, l4, l5, l12]),
            (6, &[l6, l6, l6, l4, l18]),
            (3, &[l6, l6, l6, l5, l5]),
            (3, &[l6, l6, l6, l5, l15]),
            (-6, &[l7, l6, l6, l4, l17]),
            (-6, &[l7, l6, l6, l4, l16]),
            (-3, &[l7, l6, l6, l5, l14]),
            (-3, &[l6, l4, l5, l7, l7]),
            (9, &[l7, l7, l4, l6, l15]),
            (2, &[l7, l7, l4, l4, l6, l12]),
            (-3, &[l14, l7, l7, l7, l4]),
        ],
        1,
    )
    .div(&lc(&[(6, &[l4, l6, l6, l6])], 1));
    let g16 = lc(&[(-3, &[l13]), (1, &[l19])], 1);

    GammaSet {
        vals: vec![
            g4, g5, g6, g7, g8, g9, g10, g11, g12, g13, g14, g15, g16,
        ],
    }
}

/// The seventeen point-subgroup invariants from the λ set; `x` is the
/// value of the first coordinate.
pub fn alpha_chain<T: Scalar>(l: &LambdaSet<T>, x: T) -> AlphaSet<T> {
    let l4 = l.get(4);
    let ratio = |num: &T, pow: i64| num.div(&l4.powi(pow));
    AlphaSet {
        vals: vec![
            x,
            ratio(l.get(5), 1),
            ratio(l.get(6), 2),
            ratio(l.get(7), 2),
            ratio(l.get(8), 2),
            ratio(l.get(9), 2),
            ratio(l.get(10), 2),
            ratio(l.get(11), 2),
            l.get(12).clone(),
            l.get(13).clone(),
            ratio(l.get(14), 1),
            ratio(l.get(15), 1),
            ratio(l.get(16), 1),
            ratio(l.get(17), 1),
            ratio(l.get(18), 1),
            l.get(19).clone(),
            l.get(20).clone(),
        ],
    }
}

/// The eleven fiber-preserving invariants from the γ-chain.
pub fn beta_chain<T: Scalar>(g: &GammaSet<T>) -> BetaSet<T> {
    let g4 = g.get(4);
    let g5 = g.get(5);
    let r = |num: &[&T], g4pow: i64| {
        let mut acc = T::from_int(1);
        for n in num {
            acc = acc.mul(n);
        }
        acc.div(&g4.powi(g4pow))
    };
    BetaSet {
        vals: vec![
            r(&[g.get(6), g5], 4),
            r(&[g.get(7), g5], 4),
            r(&[g.get(8), g5, g5], 6),
            r(&[g.get(9), g5, g5, g5], 8),
            r(&[g5, g5, g.get(10)], 4),
            r(&[g5, g.get(11)], 3),
            r(&[g.get(12), g5, g5], 5),
            r(&[g.get(13), g5, g5, g5], 7),
            r(&[g.get(14), g5, g5, g5], 7),
            r(&[g.get(15), g5, g5, g5, g5], 9),
            r(&[g.get(16), g5, g5, g5], 6),
        ],
    }
}

fn table_getter(t: &DerivTable) -> impl Fn(Z) -> Expr + '_ {
    |z| t.get(z).clone()
}

/// Symbolic λ invariants of an ODE, simplified.
pub fn lambda_invariants(ode: &OdeSpec) -> LambdaSet<Expr> {
    let t = ode.table();
    let getter = table_getter(&t);
    lambda_chain(&getter).map(|e| simplify_factored(e))
}

fn ensure_nonzero(e: &Expr, what: &str) -> Result<(), OdeError> {
    if equals_zero(e, &ZeroPolicy::default()) == Trit::Yes {
        Err(OdeError::OutsideClass(format!("{what} vanishes identically")))
    } else {
        Ok(())
    }
}

/// Symbolic γ invariants; errors when `f_{4,4,4}` vanishes identically,
/// which puts the ODE outside the fiber-preserving theorem's class.
pub fn gamma_invariants(ode: &OdeSpec) -> Result<GammaSet<Expr>, OdeError> {
    let l = lambda_invariants(ode);
    ensure_nonzero(l.get(6), "f_{4,4,4}")?;
    Ok(gamma_chain(&l).map(|e| simplify_factored(e)))
}

/// Symbolic α invariants; errors when `f_{4,4}` vanishes identically.
pub fn alpha_invariants(ode: &OdeSpec) -> Result<AlphaSet<Expr>, OdeError> {
    let l = lambda_invariants(ode);
    ensure_nonzero(l.get(4), "f_{4,4}")?;
    Ok(alpha_chain(&l, Expr::sym(VAR_X)).map(|e| simplify_factored(e)))
}

/// Symbolic β invariants; requires both class conditions.
pub fn beta_invariants(ode: &OdeSpec) -> Result<BetaSet<Expr>, OdeError> {
    let l = lambda_invariants(ode);
    ensure_nonzero(l.get(4), "f_{4,4} (= gamma_4)")?;
    ensure_nonzero(l.get(6), "f_{4,4,4} (= gamma_5)")?;
    let g = gamma_chain(&l);
    Ok(beta_chain(&g).map(|e| simplify_factored(e)))
}

/// β values at a point, through the same chain over exact numbers.
/// `Singular` entries flag points on some denominator's zero locus.
pub fn beta_values(t: &DerivTable, point: &Assignment, ctx: &EvalCtx) -> BetaSet<Val> {
    let entries = t.eval_at(point, ctx);
    let g = |z: Z| entries[crate::jet::Z_ALL.iter().position(|&w| w == z).unwrap()].clone();
    beta_chain(&gamma_chain(&lambda_chain(&g)))
}

/// α values at a point.
pub fn alpha_values(t: &DerivTable, point: &Assignment, ctx: &EvalCtx) -> AlphaSet<Val> {
    let entries = t.eval_at(point, ctx);
    let g = |z: Z| entries[crate::jet::Z_ALL.iter().position(|&w| w == z).unwrap()].clone();
    let x = match point.get(VAR_X) {
        Some(v) => Val::Num(v.clone()),
        None => Val::Singular,
    };
    alpha_chain(&lambda_chain(&g), x)
}

/// Classification of one invariant's dependence on the jet point.
#[derive(Debug, Clone, PartialEq)]
pub enum ConstancyClass {
    /// Equal to this exact constant everywhere on the domain.
    Constant(Rat),
    /// Provably non-constant, with a witness pair of points and values.
    NonConstant {
        witness: Box<(Assignment, NumValue)>,
    },
    Unknown,
}

/// Per-invariant constancy classification.
#[derive(Debug, Clone)]
pub struct ConstancyReport {
    pub classes: Vec<(usize, ConstancyClass)>,
}

impl ConstancyReport {
    pub fn class(&self, idx: usize) -> &ConstancyClass {
        &self.classes.iter().find(|(i, _)| *i == idx).unwrap().1
    }

    pub fn all_constant(&self) -> bool {
        self.classes
            .iter()
            .all(|(_, c)| matches!(c, ConstancyClass::Constant(_)))
    }
}

#[derive(Debug, Clone)]
pub struct ConstancyCfg {
    pub seed: u64,
    pub points: usize,
}

impl Default for ConstancyCfg {
    fn default() -> Self {
        ConstancyCfg {
            seed: 0xc0_57,
            points: 25,
        }
    }
}

/// Classifies each invariant expression as identically constant (with
/// the exact value), provably non-constant (witnessed), or unknown. The
/// candidate constant is read from the first valid sample point under
/// the seed; the decision is `equals_zero(inv - candidate)`.
pub fn classify_constancy(
    invariants: &[(usize, Expr)],
    ode: &OdeSpec,
    cfg: &ConstancyCfg,
) -> ConstancyReport {
    let ctx = EvalCtx::default();
    let zp = ZeroPolicy::with_seed(cfg.seed ^ 0x9e37);
    let mut classes = Vec::with_capacity(invariants.len());
    for (idx, inv) in invariants {
        // Fast path: the simplified invariant is a literal constant.
        let s = simplify(inv);
        if let Some(r) = s.as_num() {
            classes.push((*idx, ConstancyClass::Constant(r.clone())));
            continue;
        }
        // Sample a candidate value at the first valid point.
        let mut constraints = ode.constraints().to_vec();
        constraints.extend(symex::collect_constraints(inv));
        let cfg_s = symex::SampleCfg::with_seed(cfg.seed);
        let pts = symex::sample_points(&ode.all_symbols(), &constraints, &cfg_s, cfg.points);
        let mut class = ConstancyClass::Unknown;
        for pt in &pts {
            let Ok(v) = evaluate(inv, pt, &ctx) else {
                continue;
            };
            let NumValue::Exact(candidate) = &v else {
                // Irrational candidate: compare against the remaining
                // points numerically; without a symbolic confirmation the
                // best honest answer stays Unknown unless refuted.
                let mut refuted = None;
                for other in &pts {
                    if let Ok(w) = evaluate(inv, other, &ctx) {
                        let diff = (w.value() - v.value()).abs();
                        if diff > symex::rat::rat_q(1, 10i64.pow(15)).pow(2) {
                            refuted = Some((other.clone(), w));
                            break;
                        }
                    }
                }
                if let Some(w) = refuted {
                    class = ConstancyClass::NonConstant {
                        witness: Box::new(w),
                    };
                }
                break;
            };
            let diff = Expr::sub(inv, &Expr::num(candidate.clone()));
            match symex::equals_zero_witnessed(&diff, &zp) {
                (Trit::Yes, _) => class = ConstancyClass::Constant(candidate.clone()),
                (Trit::No, w) => {
                    let witness = match w {
                        Some(wit) => (wit.point, wit.value),
                        None => (pt.clone(), v.clone()),
                    };
                    class = ConstancyClass::NonConstant {
                        witness: Box::new(witness),
                    };
                }
                (Trit::Unknown, _) => class = ConstancyClass::Unknown,
            }
            break;
        }
        classes.push((*idx, class));
    }
    ConstancyReport { classes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use symex::rat::{rat_i, rat_q};

    fn ode(src: &str) -> OdeSpec {
        OdeSpec::parse(src).unwrap()
    }

    fn expr(src: &str) -> Expr {
        symex::parse(src).unwrap()
    }

    fn assert_same(a: &Expr, b: &Expr) {
        assert!(
            simplify(&Expr::sub(a, b)).is_zero(),
            "expected {a} == {b}"
        );
    }

    #[test]
    fn lambda_values_for_cubic() {
        let l = lambda_invariants(&ode("q^3"));
        assert_same(l.get(4), &expr("6*q"));
        assert_same(l.get(5), &Expr::zero());
        assert_same(l.get(6), &expr("6"));
        // lambda_12 = (1/3)(-9q^4 + 18q^4) = 3q^4
        assert_same(l.get(12), &expr("3*q^4"));
        assert_same(l.get(13), &expr("6*q^6"));
        assert_same(l.get(19), &expr("18*q^6"));
        assert_same(l.get(20), &expr("30*q^8"));
    }

    #[test]
    fn lambda_values_for_sesquipower() {
        // f = q^(3/2): lambda_4 = (3/4) q^(-1/2), lambda_6 = -(3/8) q^(-3/2)
        let l = lambda_invariants(&ode("q^(3/2)"));
        let l4 = simplify(l.get(4));
        let expect4 = simplify(&Expr::mul(
            &Expr::num(rat_q(3, 4)),
            &Expr::pow(&Expr::sym("q"), rat_q(-1, 2)),
        ));
        assert!(l4.same(&expect4), "lambda_4 = {l4}");
        let l6 = simplify(l.get(6));
        let expect6 = simplify(&Expr::mul(
            &Expr::num(rat_q(-3, 8)),
            &Expr::pow(&Expr::sym("q"), rat_q(-3, 2)),
        ));
        assert!(l6.same(&expect6), "lambda_6 = {l6}");
    }

    #[test]
    fn gamma_class_preconditions() {
        assert!(gamma_invariants(&ode("q^3")).is_ok());
        // f = q^2 has f_{4,4,4} = 0: excluded
        match gamma_invariants(&ode("q^2")) {
            Err(OdeError::OutsideClass(msg)) => assert!(msg.contains("4,4,4")),
            other => panic!("expected OutsideClass, got {other:?}"),
        }
        let g = gamma_invariants(&ode("q^4")).unwrap();
        assert_same(g.get(5), &expr("24*q"));
    }

    #[test]
    fn alpha_class_preconditions() {
        // f = p*q has f_{4,4} = 0: excluded
        assert!(matches!(
            alpha_invariants(&ode("p*q")),
            Err(OdeError::OutsideClass(_))
        ));
        let a = alpha_invariants(&ode("q^3")).unwrap();
        assert_same(a.get(1), &Expr::sym("x"));
        // alpha_3 = 6/(6q)^2 = 1/(6 q^2)
        assert_same(a.get(3), &expr("1/(6*q^2)"));
    }

    #[test]
    fn beta_constants_for_cubic_and_quartic() {
        let b3 = beta_invariants(&ode("q^3")).unwrap();
        for (i, e) in b3.iter() {
            let expect = match i {
                5 => Expr::num(rat_q(1, 12)),
                6 => Expr::num(rat_q(1, 3)),
                _ => Expr::zero(),
            };
            assert_same(e, &expect);
        }
        let b4 = beta_invariants(&ode("q^4")).unwrap();
        for (i, e) in b4.iter() {
            let expect = match i {
                5 => Expr::num(rat_q(5, 27)),
                6 => Expr::num(rat_q(5, 9)),
                11 => Expr::num(rat_q(5, 243)),
                _ => Expr::zero(),
            };
            assert_same(e, &expect);
        }
    }

    #[test]
    fn beta_values_match_symbolic_for_quartic() {
        let o = ode("q^4");
        let t = o.table();
        let pt = Assignment::new()
            .bind("x", rat_i(2))
            .bind("y", rat_i(1))
            .bind("p", rat_i(1))
            .bind("q", rat_q(3, 2));
        let vals = beta_values(&t, &pt, &EvalCtx::default());
        assert_eq!(vals.get(5), &Val::exact(rat_q(5, 27)));
        assert_eq!(vals.get(11), &Val::exact(rat_q(5, 243)));
    }

    #[test]
    fn constancy_classification() {
        let o = ode("q^3");
        let b = beta_invariants(&o).unwrap();
        let invs: Vec<(usize, Expr)> = b.iter().map(|(i, e)| (i, e.clone())).collect();
        let rep = classify_constancy(&invs, &o, &ConstancyCfg::default());
        assert!(rep.all_constant());
        assert_eq!(rep.class(5), &ConstancyClass::Constant(rat_q(1, 12)));

        // Example 4.2's ODE (5): beta_5 is provably non-constant.
        let o5 = ode("3*q^2/p + A*q^3/p^5");
        let b5 = beta_invariants(&o5).unwrap();
        let invs5 = vec![(5usize, b5.get(5).clone())];
        let rep5 = classify_constancy(&invs5, &o5, &ConstancyCfg::default());
        assert!(
            matches!(rep5.class(5), ConstancyClass::NonConstant { .. }),
            "beta_5 of ODE (5) should be non-constant: {:?}",
            rep5.class(5)
        );
    }
}
