//! Partially factored rational normal form.
//!
//! A [`Factored`] value is `coeff * prod(atom^e) * prod(poly^k)` with a
//! rational coefficient, rational exponents on atoms, and nonzero
//! *integer* exponents on primitive multi-term polynomial factors.
//! Denominators in this problem family arrive as products of named
//! quantities (table entries, relative invariants, transform Jacobians),
//! so keeping the factor list explicit and cancelling by exact trial
//! division avoids expanding large powers that a full gcd would have to
//! grind back down.
//!
//! Addition extracts the common coefficient, atom and factor content,
//! expands only the residual parts into polynomials, and re-extracts
//! content from the sum. Fractional powers of multi-term polynomials are
//! interned as opaque atoms; everything else stays exact.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::expr::{Expr, ExprKind};
use crate::poly::{atom_expr, atom_id, AtomId, Mono, Poly};
use crate::rat::{exact_pow, rat_gcd, rat_powi, rex_to_rat, Rat, Rex};

/// Error from the normal-form machine: the expression contains a
/// division by an identically zero quantity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionByZeroExpr;

impl std::fmt::Display for DivisionByZeroExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "division by an identically zero expression")
    }
}

impl std::error::Error for DivisionByZeroExpr {}

pub type NfResult<T> = Result<T, DivisionByZeroExpr>;

#[derive(Debug, Clone)]
pub struct Factored {
    pub coeff: Rat,
    /// Sorted atom powers with rational exponents.
    pub mono: Vec<(AtomId, Rex)>,
    /// Sorted primitive multi-term polynomial factors with integer exponents.
    pub factors: Vec<(Arc<Poly>, i64)>,
}

impl Factored {
    pub fn zero() -> Factored {
        Factored {
            coeff: Rat::zero(),
            mono: Vec::new(),
            factors: Vec::new(),
        }
    }

    pub fn one() -> Factored {
        Factored::from_coeff(Rat::one())
    }

    pub fn from_coeff(c: Rat) -> Factored {
        Factored {
            coeff: c,
            mono: Vec::new(),
            factors: Vec::new(),
        }
    }

    pub fn from_atom(a: AtomId) -> Factored {
        Factored {
            coeff: Rat::one(),
            mono: vec![(a, Rex::one())],
            factors: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn as_constant(&self) -> Option<&Rat> {
        if self.mono.is_empty() && self.factors.is_empty() {
            Some(&self.coeff)
        } else {
            None
        }
    }

    /// All atoms mentioned, including those inside polynomial factors.
    pub fn atoms(&self) -> Vec<AtomId> {
        let mut out: Vec<AtomId> = self.mono.iter().map(|&(a, _)| a).collect();
        for (p, _) in &self.factors {
            for (m, _) in p.terms() {
                out.extend(m.pairs().iter().map(|&(a, _)| a));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn mul(&self, other: &Factored) -> Factored {
        if self.is_zero() || other.is_zero() {
            return Factored::zero();
        }
        let mut out = Factored {
            coeff: &self.coeff * &other.coeff,
            mono: merge_mono(&self.mono, &other.mono),
            factors: merge_factors(&self.factors, &other.factors),
        };
        out.fix();
        out.reduce();
        out
    }

    pub fn powr(&self, r: Rex) -> NfResult<Factored> {
        if r.is_zero() {
            return Ok(Factored::one());
        }
        if self.is_zero() {
            return if r.is_positive() {
                Ok(Factored::zero())
            } else {
                Err(DivisionByZeroExpr)
            };
        }
        let mut out = Factored::one();
        // Coefficient power.
        if let Some(v) = exact_pow(&self.coeff, &r) {
            out.coeff = v;
        } else if self.coeff.is_negative() && !r.is_integer() {
            // Degenerate real-valued case; keep it opaque.
            let e = Expr::pow(&Expr::num(self.coeff.clone()), rex_to_rat(r));
            out = out.mul(&Factored::from_atom(atom_id(&e)));
        } else {
            // Split over primes via the tree constructor, which already
            // knows how to factor small numerators and denominators.
            let e = Expr::pow(&Expr::num(self.coeff.clone()), rex_to_rat(r));
            out = out.mul(&fold_numeric_power(&e));
        }
        for &(a, e) in &self.mono {
            out.mono.push((a, e * r));
        }
        out.mono = merge_mono(&out.mono.clone(), &[]);
        for (p, k) in &self.factors {
            let total = Rex::from_integer(*k) * r;
            if total.is_integer() {
                out.factors.push((p.clone(), *total.numer()));
            } else {
                let fl = total.floor();
                let frac = total - fl;
                if !fl.is_zero() {
                    out.factors.push((p.clone(), *fl.numer()));
                }
                let a = atom_id(&poly_to_expr(p));
                out.mono.push((a, frac));
            }
        }
        out.mono = merge_mono(&out.mono.clone(), &[]);
        out.factors = merge_factors(&out.factors.clone(), &[]);
        out.fix();
        out.reduce();
        Ok(out)
    }

    pub fn div(&self, other: &Factored) -> NfResult<Factored> {
        Ok(self.mul(&other.powr(Rex::from_integer(-1))?))
    }

    /// Folds monomial entries that are not really atomic: integer powers
    /// of numeric atoms go to the coefficient, integer powers of compound
    /// atoms (sums held opaque under fractional exponents) are converted
    /// back into polynomial factors.
    fn fix(&mut self) {
        loop {
            let mut rebuilt = false;
            let mut keep: Vec<(AtomId, Rex)> = Vec::with_capacity(self.mono.len());
            let mut convert: Vec<(Expr, i64)> = Vec::new();
            for &(a, e) in &self.mono {
                if e.is_zero() {
                    continue;
                }
                let ax = atom_expr(a);
                match ax.kind() {
                    ExprKind::Num(c) => {
                        let fl = e.floor();
                        let frac = e - fl;
                        if !fl.is_zero() {
                            self.coeff *= rat_powi(c, *fl.numer());
                            rebuilt = true;
                        }
                        if !frac.is_zero() {
                            keep.push((a, frac));
                        }
                    }
                    ExprKind::Sym(_) | ExprKind::Exp(_) | ExprKind::Ln(_) => keep.push((a, e)),
                    _ => {
                        // Compound atom (e.g. a sum under a fractional power,
                        // or an opaque power node).
                        if e.is_integer() {
                            convert.push((ax.clone(), *e.numer()));
                            rebuilt = true;
                        } else {
                            let fl = e.floor();
                            let frac = e - fl;
                            if !fl.is_zero() {
                                convert.push((ax.clone(), *fl.numer()));
                                rebuilt = true;
                            }
                            keep.push((a, frac));
                        }
                    }
                }
            }
            self.mono = keep;
            if !convert.is_empty() {
                let mut acc = std::mem::replace(self, Factored::one());
                for (ex, k) in convert {
                    if let Ok(f) = crate::normalize::normalize(&ex) {
                        if let Ok(pk) = f.powr(Rex::from_integer(k)) {
                            acc = raw_mul(&acc, &pk);
                            continue;
                        }
                    }
                    // Conversion failed; keep the entry opaque.
                    acc.mono.push((atom_id(&ex), Rex::from_integer(k)));
                    acc.mono = merge_mono(&acc.mono.clone(), &[]);
                }
                *self = acc;
            }
            if !rebuilt {
                break;
            }
        }
    }

    /// Cancels denominator factors against numerator factors by exact
    /// trial division, in both directions, until a fixed point.
    fn reduce(&mut self) {
        if self.is_zero() {
            return;
        }
        'outer: loop {
            let n = self.factors.len();
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let (ei, ej) = (self.factors[i].1, self.factors[j].1);
                    if ei <= 0 || ej >= 0 {
                        continue;
                    }
                    // factors[i]^ei with ei>0, factors[j]^ej with ej<0.
                    if let Some(q) = self.factors[i].0.exact_div(&self.factors[j].0) {
                        let (c, m, prim) = q.normalize_full();
                        self.coeff *= rat_powi(&c, ei);
                        let mpow = m.pow(Rex::from_integer(ei));
                        for &(a, e) in mpow.pairs() {
                            self.mono.push((a, e));
                        }
                        self.mono = merge_mono(&self.mono.clone(), &[]);
                        self.factors[j].1 += ei;
                        if prim.num_terms() > 1 {
                            self.factors[i] = (Arc::new(prim), ei);
                        } else {
                            self.factors[i].1 = 0;
                        }
                        self.factors.retain(|&(_, k)| k != 0);
                        self.factors = merge_factors(&self.factors.clone(), &[]);
                        continue 'outer;
                    }
                    if let Some(q) = self.factors[j].0.exact_div(&self.factors[i].0) {
                        // denominator = numerator-factor * q
                        let (c, m, prim) = q.normalize_full();
                        self.coeff *= rat_powi(&c, ej);
                        let mpow = m.pow(Rex::from_integer(ej));
                        for &(a, e) in mpow.pairs() {
                            self.mono.push((a, e));
                        }
                        self.mono = merge_mono(&self.mono.clone(), &[]);
                        self.factors[i].1 += ej;
                        if prim.num_terms() > 1 {
                            self.factors[j] = (Arc::new(prim), ej);
                        } else {
                            self.factors[j].1 = 0;
                        }
                        self.factors.retain(|&(_, k)| k != 0);
                        self.factors = merge_factors(&self.factors.clone(), &[]);
                        continue 'outer;
                    }
                }
            }
            break;
        }
        self.fix();
    }
}

/// Multiplication without the fix/reduce passes; used internally where
/// the passes run once at the end.
fn raw_mul(a: &Factored, b: &Factored) -> Factored {
    if a.is_zero() || b.is_zero() {
        return Factored::zero();
    }
    Factored {
        coeff: &a.coeff * &b.coeff,
        mono: merge_mono(&a.mono, &b.mono),
        factors: merge_factors(&a.factors, &b.factors),
    }
}

fn merge_mono(a: &[(AtomId, Rex)], b: &[(AtomId, Rex)]) -> Vec<(AtomId, Rex)> {
    let mut all: Vec<(AtomId, Rex)> = a.iter().chain(b.iter()).cloned().collect();
    all.sort_by_key(|&(id, _)| id);
    let mut out: Vec<(AtomId, Rex)> = Vec::with_capacity(all.len());
    for (id, e) in all {
        match out.last_mut() {
            Some((lid, le)) if *lid == id => *le += e,
            _ => out.push((id, e)),
        }
    }
    out.retain(|&(_, e)| !e.is_zero());
    out
}

fn merge_factors(a: &[(Arc<Poly>, i64)], b: &[(Arc<Poly>, i64)]) -> Vec<(Arc<Poly>, i64)> {
    let mut all: Vec<(Arc<Poly>, i64)> = a.iter().chain(b.iter()).cloned().collect();
    all.sort_by(|x, y| x.0.cmp(&y.0));
    let mut out: Vec<(Arc<Poly>, i64)> = Vec::with_capacity(all.len());
    for (p, k) in all {
        match out.last_mut() {
            Some((lp, lk)) if **lp == *p => *lk += k,
            _ => out.push((p, k)),
        }
    }
    out.retain(|&(_, k)| k != 0);
    out
}

/// Folds a canonical numeric-power expression (`Num`, `Pow(Num, frac)` or
/// a product of those) into a factored value without recursing into the
/// general normalizer.
fn fold_numeric_power(e: &Expr) -> Factored {
    let mut out = Factored::one();
    let parts: Vec<Expr> = match e.kind() {
        ExprKind::Prod(cs) => cs.clone(),
        _ => vec![e.clone()],
    };
    for p in parts {
        match p.kind() {
            ExprKind::Num(c) => out.coeff *= c,
            ExprKind::Pow(b, ex) => {
                let re = crate::rat::rat_to_rex(ex).expect("small exponent");
                out.mono.push((atom_id(b), re));
            }
            _ => {
                out.mono.push((atom_id(&p), Rex::one()));
            }
        }
    }
    out.mono = merge_mono(&out.mono.clone(), &[]);
    out
}

/// Renders a polynomial back into a canonical expression tree.
pub fn poly_to_expr(p: &Poly) -> Expr {
    let mut terms = Vec::with_capacity(p.num_terms());
    for (m, c) in p.terms() {
        let mut fs = vec![Expr::num(c.clone())];
        for &(a, e) in m.pairs() {
            fs.push(Expr::pow(&atom_expr(a), rex_to_rat(e)));
        }
        terms.push(Expr::mul_all(&fs));
    }
    Expr::add_all(&terms)
}

/// Expands `coeff * mono * factors` into a single polynomial. All factor
/// exponents must be nonnegative; fractional atom powers stay atomic.
fn expand(coeff: &Rat, mono: &[(AtomId, Rex)], factors: &[(Arc<Poly>, i64)]) -> Poly {
    let m = Mono::from_pairs(mono.to_vec());
    let mut acc = Poly::term(m, coeff.clone());
    for (p, k) in factors {
        debug_assert!(*k >= 0);
        acc = acc.mul(&p.pow_u(*k as u64));
    }
    acc
}

/// N-ary sum with global common-content extraction.
pub fn add_many(items: Vec<Factored>) -> Factored {
    let items: Vec<Factored> = items.into_iter().filter(|f| !f.is_zero()).collect();
    if items.is_empty() {
        return Factored::zero();
    }
    if items.len() == 1 {
        return items.into_iter().next().unwrap();
    }
    // Common rational coefficient (positive gcd).
    let mut cg = Rat::zero();
    for it in &items {
        cg = rat_gcd(&cg, &it.coeff);
    }
    // Common atom part: per-atom minimum exponent, absent = 0.
    let mut common_mono: Vec<(AtomId, Rex)> = items[0].mono.clone();
    for it in items.iter().skip(1) {
        common_mono = pairwise_min_mono(&common_mono, &it.mono);
    }
    common_mono.retain(|&(_, e)| !e.is_zero());
    // Common factor part: per-poly minimum exponent, absent = 0.
    let mut common_factors: Vec<(Arc<Poly>, i64)> = items[0].factors.clone();
    for it in items.iter().skip(1) {
        common_factors = pairwise_min_factors(&common_factors, &it.factors);
    }
    common_factors.retain(|&(_, k)| k != 0);

    let mut sum = Poly::zero();
    for it in &items {
        let rc = &it.coeff / &cg;
        let rm = sub_mono(&it.mono, &common_mono);
        let rf = sub_factors(&it.factors, &common_factors);
        sum = sum.add(&expand(&rc, &rm, &rf));
    }
    if sum.is_zero() {
        return Factored::zero();
    }
    let (c, m, prim) = sum.normalize_full();
    let mut out = Factored {
        coeff: cg * c,
        mono: common_mono,
        factors: common_factors,
    };
    for &(a, e) in m.pairs() {
        out.mono.push((a, e));
    }
    out.mono = merge_mono(&out.mono.clone(), &[]);
    if prim.num_terms() > 1 {
        out.factors = merge_factors(&out.factors.clone(), &[(Arc::new(prim), 1)]);
    }
    out.fix();
    out.reduce();
    out
}

fn pairwise_min_mono(a: &[(AtomId, Rex)], b: &[(AtomId, Rex)]) -> Vec<(AtomId, Rex)> {
    let zero = Rex::from_integer(0);
    let mut ids: Vec<AtomId> = a.iter().chain(b.iter()).map(|&(id, _)| id).collect();
    ids.sort_unstable();
    ids.dedup();
    ids.into_iter()
        .map(|id| {
            let ea = a
                .iter()
                .find(|&&(x, _)| x == id)
                .map(|&(_, e)| e)
                .unwrap_or(zero);
            let eb = b
                .iter()
                .find(|&&(x, _)| x == id)
                .map(|&(_, e)| e)
                .unwrap_or(zero);
            (id, ea.min(eb))
        })
        .collect()
}

fn pairwise_min_factors(a: &[(Arc<Poly>, i64)], b: &[(Arc<Poly>, i64)]) -> Vec<(Arc<Poly>, i64)> {
    let mut out: Vec<(Arc<Poly>, i64)> = Vec::new();
    let mut seen: Vec<&Arc<Poly>> = Vec::new();
    for (p, _ka) in a.iter().chain(b.iter()) {
        if seen.iter().any(|q| ***q == **p) {
            continue;
        }
        seen.push(p);
        let ea = a.iter().find(|(q, _)| **q == **p).map(|&(_, k)| k).unwrap_or(0);
        let eb = b.iter().find(|(q, _)| **q == **p).map(|&(_, k)| k).unwrap_or(0);
        out.push((p.clone(), ea.min(eb)));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

fn sub_mono(a: &[(AtomId, Rex)], common: &[(AtomId, Rex)]) -> Vec<(AtomId, Rex)> {
    let negated: Vec<(AtomId, Rex)> = common.iter().map(|&(id, e)| (id, -e)).collect();
    merge_mono(a, &negated)
}

fn sub_factors(a: &[(Arc<Poly>, i64)], common: &[(Arc<Poly>, i64)]) -> Vec<(Arc<Poly>, i64)> {
    let negated: Vec<(Arc<Poly>, i64)> = common.iter().map(|(p, k)| (p.clone(), -k)).collect();
    merge_factors(a, &negated)
}

/// The fully expanded numerator/denominator pair of a factored value.
/// Positive powers expand into the numerator, negative into the
/// denominator; fractional atom exponents split by sign.
pub fn to_num_den(f: &Factored) -> (Poly, Poly) {
    if f.is_zero() {
        return (Poly::zero(), Poly::one());
    }
    let (mut num_mono, mut den_mono) = (Vec::new(), Vec::new());
    for &(a, e) in &f.mono {
        if e.is_positive() {
            num_mono.push((a, e));
        } else {
            den_mono.push((a, -e));
        }
    }
    let (mut num_fac, mut den_fac) = (Vec::new(), Vec::new());
    for (p, k) in &f.factors {
        if *k > 0 {
            num_fac.push((p.clone(), *k));
        } else {
            den_fac.push((p.clone(), -*k));
        }
    }
    let cn = Rat::from_integer(f.coeff.numer().clone());
    let cd = Rat::from_integer(f.coeff.denom().clone());
    let num = expand(&cn, &num_mono, &num_fac);
    let den = expand(&cd, &den_mono, &den_fac);
    (num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalize::normalize;
    use crate::parse::parse;

    fn nf(src: &str) -> Factored {
        normalize(&parse(src).unwrap()).unwrap()
    }

    #[test]
    fn cancellation_by_trial_division() {
        // (x^2 - 1) / (x - 1) reduces to x + 1
        let f = nf("(x^2 - 1)/(x - 1)");
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].1, 1);
        assert_eq!(f.factors[0].0.num_terms(), 2);
    }

    #[test]
    fn difference_of_equal_products_is_zero() {
        let f = nf("(x - 1)*(x + 1) - (x^2 - 1)");
        assert!(f.is_zero());
    }

    #[test]
    fn rational_exponent_arithmetic() {
        // q^(3/2) * q^(1/2) = q^2
        let f = nf("q^(3/2)*q^(1/2)");
        assert_eq!(f.mono.len(), 1);
        assert_eq!(f.mono[0].1, Rex::from_integer(2));
    }

    #[test]
    fn common_content_in_sums() {
        // q^(3/2) + q^(1/2) = q^(1/2) * (q + 1)
        let f = nf("q^(3/2) + q^(1/2)");
        assert_eq!(f.mono.len(), 1);
        assert_eq!(f.mono[0].1, Rex::new(1, 2));
        assert_eq!(f.factors.len(), 1);
    }

    #[test]
    fn negative_powers_in_sums() {
        // 1/x + x = (1 + x^2)/x
        let f = nf("1/x + x");
        assert_eq!(f.mono.len(), 1);
        assert_eq!(f.mono[0].1, Rex::from_integer(-1));
    }
}
