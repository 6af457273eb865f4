//! Immutable, hash-consed expression trees with canonicalizing constructors.
//!
//! Construction goes through the smart constructors [`Expr::add_all`],
//! [`Expr::mul_all`], [`Expr::pow`], [`Expr::exp_of`], [`Expr::ln_of`],
//! which maintain the canonical-form invariants:
//!
//! * sums and products are flattened and children kept in a deterministic
//!   total order;
//! * like terms in sums are merged by their rational coefficient, like
//!   bases in products by adding exponents;
//! * power nodes never carry exponent 0 or 1, never a product or power
//!   base, and numeric bases are folded or split into prime powers;
//! * `exp` arguments are sums split multiplicatively, rational multiples
//!   of `ln` are folded into powers, and the rational coefficient of an
//!   `exp` argument is carried as an outer exponent, so `exp(-t)` and
//!   `exp(t)^(-1)` coincide.
//!
//! Fractional powers are treated as real-valued on positive bases only;
//! nested powers and powers of products are flattened under that
//! assumption (the sampling layer rejects points that violate it).

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{Euclid, One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::rat::{exact_pow, rat_i, rat_powi, rat_to_rex, Rat};

/// The node variants of an expression tree.
#[derive(Debug, Clone)]
pub enum ExprKind {
    /// Exact rational constant.
    Num(Rat),
    /// Named symbol: the jet variables `x y p q` or a parameter.
    Sym(Arc<str>),
    /// Flattened sum with at least two children.
    Sum(Vec<Expr>),
    /// Flattened product with at least two children.
    Prod(Vec<Expr>),
    /// Power with a rational exponent, never 0 or 1.
    Pow(Expr, Rat),
    /// Exponential of a coefficient-free, non-sum argument.
    Exp(Expr),
    /// Natural logarithm.
    Ln(Expr),
}

#[derive(Debug)]
pub struct ExprNode {
    kind: ExprKind,
    hash: u64,
    id: u64,
}

/// A reference-counted, interned expression. Cloning is cheap and
/// equality of interned values is pointer equality.
#[derive(Debug, Clone)]
pub struct Expr(Arc<ExprNode>);

static NEXT_ID: AtomicU64 = AtomicU64::new(1);
static INTERNER: Lazy<Mutex<HashMap<u64, Vec<Expr>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

fn kind_rank(k: &ExprKind) -> u8 {
    match k {
        ExprKind::Num(_) => 0,
        ExprKind::Sym(_) => 1,
        ExprKind::Exp(_) => 2,
        ExprKind::Ln(_) => 3,
        ExprKind::Pow(_, _) => 4,
        ExprKind::Prod(_) => 5,
        ExprKind::Sum(_) => 6,
    }
}

fn hash_kind(kind: &ExprKind) -> u64 {
    let mut h = DefaultHasher::new();
    kind_rank(kind).hash(&mut h);
    match kind {
        ExprKind::Num(r) => {
            r.numer().hash(&mut h);
            r.denom().hash(&mut h);
        }
        ExprKind::Sym(s) => s.hash(&mut h),
        ExprKind::Sum(cs) | ExprKind::Prod(cs) => {
            for c in cs {
                c.node_hash().hash(&mut h);
            }
        }
        ExprKind::Pow(b, e) => {
            b.node_hash().hash(&mut h);
            e.numer().hash(&mut h);
            e.denom().hash(&mut h);
        }
        ExprKind::Exp(a) | ExprKind::Ln(a) => a.node_hash().hash(&mut h),
    }
    h.finish()
}

fn shallow_eq(a: &ExprKind, b: &ExprKind) -> bool {
    match (a, b) {
        (ExprKind::Num(x), ExprKind::Num(y)) => x == y,
        (ExprKind::Sym(x), ExprKind::Sym(y)) => x == y,
        (ExprKind::Sum(x), ExprKind::Sum(y)) | (ExprKind::Prod(x), ExprKind::Prod(y)) => {
            x.len() == y.len() && x.iter().zip(y).all(|(u, v)| u.same(v))
        }
        (ExprKind::Pow(xb, xe), ExprKind::Pow(yb, ye)) => xb.same(yb) && xe == ye,
        (ExprKind::Exp(x), ExprKind::Exp(y)) | (ExprKind::Ln(x), ExprKind::Ln(y)) => x.same(y),
        _ => false,
    }
}

fn intern(kind: ExprKind) -> Expr {
    let hash = hash_kind(&kind);
    let mut map = INTERNER.lock().unwrap();
    let bucket = map.entry(hash).or_default();
    for e in bucket.iter() {
        if shallow_eq(&e.0.kind, &kind) {
            return e.clone();
        }
    }
    let id = NEXT_ID.fetch_add(1, AtomicOrdering::Relaxed);
    let e = Expr(Arc::new(ExprNode { kind, hash, id }));
    bucket.push(e.clone());
    e
}

static ZERO: Lazy<Expr> = Lazy::new(|| intern(ExprKind::Num(Rat::zero())));
static ONE: Lazy<Expr> = Lazy::new(|| intern(ExprKind::Num(Rat::one())));

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}
impl Eq for Expr {}

impl Hash for Expr {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash.hash(state);
    }
}

impl PartialOrd for Expr {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Expr {
    /// Deterministic structural order: node kind first, then symbol name,
    /// numeric value or recursive child comparison.
    fn cmp(&self, other: &Self) -> Ordering {
        if self.same(other) {
            return Ordering::Equal;
        }
        let (a, b) = (self.kind(), other.kind());
        match kind_rank(a).cmp(&kind_rank(b)) {
            Ordering::Equal => {}
            o => return o,
        }
        match (a, b) {
            (ExprKind::Num(x), ExprKind::Num(y)) => x.cmp(y),
            (ExprKind::Sym(x), ExprKind::Sym(y)) => x.cmp(y),
            (ExprKind::Sum(x), ExprKind::Sum(y)) | (ExprKind::Prod(x), ExprKind::Prod(y)) => {
                for (u, v) in x.iter().zip(y.iter()) {
                    match u.cmp(v) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                x.len().cmp(&y.len())
            }
            (ExprKind::Pow(xb, xe), ExprKind::Pow(yb, ye)) => {
                xb.cmp(yb).then_with(|| xe.cmp(ye))
            }
            (ExprKind::Exp(x), ExprKind::Exp(y)) | (ExprKind::Ln(x), ExprKind::Ln(y)) => x.cmp(y),
            _ => unreachable!("rank comparison handled mixed kinds"),
        }
    }
}

impl Expr {
    pub fn kind(&self) -> &ExprKind {
        &self.0.kind
    }

    /// Stable identity of the interned node; usable as a memo key.
    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub(crate) fn node_hash(&self) -> u64 {
        self.0.hash
    }

    /// Pointer identity; equivalent to structural equality for interned nodes.
    pub fn same(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn zero() -> Expr {
        ZERO.clone()
    }

    pub fn one() -> Expr {
        ONE.clone()
    }

    pub fn num(r: Rat) -> Expr {
        if r.is_zero() {
            Expr::zero()
        } else if r.is_one() {
            Expr::one()
        } else {
            intern(ExprKind::Num(r))
        }
    }

    pub fn int(n: i64) -> Expr {
        Expr::num(rat_i(n))
    }

    pub fn sym(name: &str) -> Expr {
        intern(ExprKind::Sym(Arc::from(name)))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.kind(), ExprKind::Num(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self.kind(), ExprKind::Num(r) if r.is_one())
    }

    pub fn as_num(&self) -> Option<&Rat> {
        match self.kind() {
            ExprKind::Num(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_sym(&self) -> Option<&Arc<str>> {
        match self.kind() {
            ExprKind::Sym(s) => Some(s),
            _ => None,
        }
    }

    /// Splits off the rational coefficient: `-3/2*x*ln(y)` gives
    /// `(-3/2, x*ln(y))`; plain numbers give `(value, 1)`.
    pub fn coeff_core(&self) -> (Rat, Expr) {
        match self.kind() {
            ExprKind::Num(r) => (r.clone(), Expr::one()),
            ExprKind::Prod(cs) => {
                if let ExprKind::Num(r) = cs[0].kind() {
                    let rest = &cs[1..];
                    let core = if rest.len() == 1 {
                        rest[0].clone()
                    } else {
                        intern(ExprKind::Prod(rest.to_vec()))
                    };
                    (r.clone(), core)
                } else {
                    (Rat::one(), self.clone())
                }
            }
            _ => (Rat::one(), self.clone()),
        }
    }

    /// Splits into base and exponent: `q^3` gives `(q, 3)`, otherwise `(self, 1)`.
    pub fn base_exp(&self) -> (Expr, Rat) {
        match self.kind() {
            ExprKind::Pow(b, e) => (b.clone(), e.clone()),
            _ => (self.clone(), Rat::one()),
        }
    }

    pub fn add_all(terms: &[Expr]) -> Expr {
        let mut konst = Rat::zero();
        let mut acc: BTreeMap<Expr, Rat> = BTreeMap::new();
        let mut stack: Vec<Expr> = terms.iter().rev().cloned().collect();
        while let Some(t) = stack.pop() {
            match t.kind() {
                ExprKind::Sum(cs) => stack.extend(cs.iter().rev().cloned()),
                ExprKind::Num(r) => konst += r,
                _ => {
                    let (c, core) = t.coeff_core();
                    let slot = acc.entry(core).or_insert_with(Rat::zero);
                    *slot += c;
                }
            }
        }
        let mut out: Vec<Expr> = Vec::with_capacity(acc.len() + 1);
        for (core, c) in acc {
            if c.is_zero() {
                continue;
            }
            out.push(attach_coeff(c, core));
        }
        if !konst.is_zero() {
            out.push(Expr::num(konst));
        }
        match out.len() {
            0 => Expr::zero(),
            1 => out.pop().unwrap(),
            _ => {
                out.sort();
                intern(ExprKind::Sum(out))
            }
        }
    }

    pub fn add(a: &Expr, b: &Expr) -> Expr {
        Expr::add_all(&[a.clone(), b.clone()])
    }

    pub fn sub(a: &Expr, b: &Expr) -> Expr {
        Expr::add_all(&[a.clone(), Expr::neg(b)])
    }

    pub fn neg(a: &Expr) -> Expr {
        Expr::mul_all(&[Expr::int(-1), a.clone()])
    }

    pub fn mul_all(factors: &[Expr]) -> Expr {
        let mut coeff = Rat::one();
        let mut pows: BTreeMap<Expr, Rat> = BTreeMap::new();
        let mut stack: Vec<Expr> = factors.iter().rev().cloned().collect();
        while let Some(f) = stack.pop() {
            match f.kind() {
                ExprKind::Prod(cs) => stack.extend(cs.iter().rev().cloned()),
                ExprKind::Num(r) => {
                    if r.is_zero() {
                        return Expr::zero();
                    }
                    coeff *= r;
                }
                _ => {
                    let (b, e) = f.base_exp();
                    let slot = pows.entry(b).or_insert_with(Rat::zero);
                    *slot += e;
                }
            }
        }
        let mut out: Vec<Expr> = Vec::with_capacity(pows.len() + 1);
        for (b, e) in pows {
            if e.is_zero() {
                continue;
            }
            // A positive numeric base with exponent already in the
            // canonical range (0,1) is an opaque irrational like 2^(1/2);
            // intern it directly instead of re-splitting forever.
            let canonical_prime_power = matches!(b.kind(), ExprKind::Num(c) if c.is_positive())
                && !crate::rat::is_integer(&e)
                && e.is_positive()
                && e < Rat::one()
                && rat_to_rex(&e)
                    .map(|re| exact_pow(b.as_num().unwrap(), &re).is_none())
                    .unwrap_or(false);
            let f = if canonical_prime_power {
                intern(ExprKind::Pow(b, e))
            } else {
                Expr::pow(&b, e)
            };
            match f.kind() {
                ExprKind::Num(r) => {
                    if r.is_zero() {
                        return Expr::zero();
                    }
                    coeff *= r;
                }
                // A rebuilt power may itself expose a coefficient, e.g.
                // (2*x)^2 -> 4*x^2; fold it back in.
                ExprKind::Prod(_) => {
                    let (c, core) = f.coeff_core();
                    coeff *= c;
                    match core.kind() {
                        ExprKind::Prod(cs) => out.extend(cs.iter().cloned()),
                        _ => out.push(core),
                    }
                }
                _ => out.push(f),
            }
        }
        if coeff.is_zero() {
            return Expr::zero();
        }
        // Re-merge: flattened prod children from the Prod arm may repeat bases.
        if out
            .iter()
            .map(|f| f.base_exp().0)
            .collect::<BTreeSet<_>>()
            .len()
            < out.len()
        {
            let mut all = out;
            all.push(Expr::num(coeff));
            return Expr::mul_all(&all);
        }
        if !coeff.is_one() {
            out.push(Expr::num(coeff));
        }
        match out.len() {
            0 => Expr::one(),
            1 => out.pop().unwrap(),
            _ => {
                out.sort();
                intern(ExprKind::Prod(out))
            }
        }
    }

    pub fn mul(a: &Expr, b: &Expr) -> Expr {
        Expr::mul_all(&[a.clone(), b.clone()])
    }

    pub fn div(a: &Expr, b: &Expr) -> Expr {
        Expr::mul_all(&[a.clone(), Expr::pow(b, rat_i(-1))])
    }

    pub fn powi(a: &Expr, n: i64) -> Expr {
        Expr::pow(a, rat_i(n))
    }

    pub fn pow(base: &Expr, e: Rat) -> Expr {
        if e.is_zero() {
            return Expr::one();
        }
        if e.is_one() {
            return base.clone();
        }
        match base.kind() {
            ExprKind::Num(c) => {
                if c.is_zero() {
                    return if e.is_positive() {
                        Expr::zero()
                    } else {
                        intern(ExprKind::Pow(base.clone(), e))
                    };
                }
                if let Some(re) = rat_to_rex(&e) {
                    if let Some(v) = exact_pow(c, &re) {
                        return Expr::num(v);
                    }
                }
                if c.is_negative() && !crate::rat::is_integer(&e) {
                    return intern(ExprKind::Pow(base.clone(), e));
                }
                num_pow_split(c, &e)
            }
            ExprKind::Pow(b, inner) => Expr::pow(b, inner * &e),
            ExprKind::Prod(cs) => {
                let fs: Vec<Expr> = cs.iter().map(|f| Expr::pow(f, e.clone())).collect();
                Expr::mul_all(&fs)
            }
            _ => intern(ExprKind::Pow(base.clone(), e)),
        }
    }

    /// `exp` of an argument; splits sums multiplicatively, folds rational
    /// multiples of logs into powers, and hoists rational coefficients to
    /// the outer exponent.
    pub fn exp_of(arg: &Expr) -> Expr {
        if arg.is_zero() {
            return Expr::one();
        }
        let terms: Vec<Expr> = match arg.kind() {
            ExprKind::Sum(cs) => cs.clone(),
            _ => vec![arg.clone()],
        };
        let mut factors = Vec::with_capacity(terms.len());
        for t in terms {
            let (c, core) = t.coeff_core();
            let f = match core.kind() {
                ExprKind::Ln(v) => Expr::pow(v, c),
                _ => Expr::pow(&intern(ExprKind::Exp(core.clone())), c),
            };
            factors.push(f);
        }
        Expr::mul_all(&factors)
    }

    /// `ln` of an argument; peels powers and positive products apart and
    /// splits rational constants into prime logarithms.
    pub fn ln_of(arg: &Expr) -> Expr {
        if arg.is_one() {
            return Expr::zero();
        }
        match arg.kind() {
            ExprKind::Num(c) => {
                if !c.is_positive() {
                    return intern(ExprKind::Ln(arg.clone()));
                }
                match (prime_split(c.numer()), prime_split(c.denom())) {
                    (Some(np), Some(dp)) => {
                        let mut terms = Vec::new();
                        for (p, a) in np {
                            terms.push(Expr::mul(
                                &Expr::int(a),
                                &intern(ExprKind::Ln(Expr::num(Rat::from_integer(p)))),
                            ));
                        }
                        for (p, a) in dp {
                            terms.push(Expr::mul(
                                &Expr::int(-a),
                                &intern(ExprKind::Ln(Expr::num(Rat::from_integer(p)))),
                            ));
                        }
                        Expr::add_all(&terms)
                    }
                    _ => intern(ExprKind::Ln(arg.clone())),
                }
            }
            ExprKind::Exp(core) => core.clone(),
            ExprKind::Pow(b, e) => Expr::mul(&Expr::num(e.clone()), &Expr::ln_of(b)),
            ExprKind::Prod(cs) => {
                let (c, _) = arg.coeff_core();
                if c.is_negative() {
                    return intern(ExprKind::Ln(arg.clone()));
                }
                let terms: Vec<Expr> = cs.iter().map(Expr::ln_of).collect();
                Expr::add_all(&terms)
            }
            _ => intern(ExprKind::Ln(arg.clone())),
        }
    }

    /// The set of free symbol names.
    pub fn free_symbols(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        let mut seen = BTreeSet::new();
        collect_symbols(self, &mut out, &mut seen);
        out
    }

    /// True if the expression does not mention the given symbol.
    pub fn is_free_of(&self, name: &str) -> bool {
        !self.free_symbols().iter().any(|s| &**s == name)
    }
}

fn collect_symbols(e: &Expr, out: &mut BTreeSet<Arc<str>>, seen: &mut BTreeSet<u64>) {
    if !seen.insert(e.id()) {
        return;
    }
    match e.kind() {
        ExprKind::Num(_) => {}
        ExprKind::Sym(s) => {
            out.insert(s.clone());
        }
        ExprKind::Sum(cs) | ExprKind::Prod(cs) => {
            for c in cs {
                collect_symbols(c, out, seen);
            }
        }
        ExprKind::Pow(b, _) => collect_symbols(b, out, seen),
        ExprKind::Exp(a) | ExprKind::Ln(a) => collect_symbols(a, out, seen),
    }
}

fn attach_coeff(c: Rat, core: Expr) -> Expr {
    if c.is_one() {
        return core;
    }
    if core.is_one() {
        return Expr::num(c);
    }
    match core.kind() {
        ExprKind::Prod(cs) => {
            let mut children = Vec::with_capacity(cs.len() + 1);
            children.push(Expr::num(c));
            children.extend(cs.iter().cloned());
            intern(ExprKind::Prod(children))
        }
        _ => intern(ExprKind::Prod(vec![Expr::num(c), core])),
    }
}

/// Splits `c^e` with fractional `e` over the prime factorization of `c`,
/// e.g. `8^(1/2)` becomes `2*2^(1/2)`. Falls back to an opaque power when
/// the factorization is out of reach.
fn num_pow_split(c: &Rat, e: &Rat) -> Expr {
    let (np, dp) = match (prime_split(c.numer()), prime_split(c.denom())) {
        (Some(a), Some(b)) => (a, b),
        _ => return intern(ExprKind::Pow(Expr::num(c.clone()), e.clone())),
    };
    let mut factors = Vec::new();
    for (p, a) in np {
        factors.push(prime_pow(p, rat_i(a) * e.clone()));
    }
    for (p, a) in dp {
        factors.push(prime_pow(p, rat_i(-a) * e.clone()));
    }
    Expr::mul_all(&factors)
}

fn prime_pow(p: BigInt, e: Rat) -> Expr {
    if crate::rat::is_integer(&e) {
        let n = e.numer().to_i64().unwrap_or(0);
        Expr::num(rat_powi(&Rat::from_integer(p), n))
    } else {
        let fl = e.numer().div_euclid(e.denom());
        let frac = &e - Rat::from_integer(fl.clone());
        let int_part = rat_powi(
            &Rat::from_integer(p.clone()),
            fl.to_i64().unwrap_or(0),
        );
        Expr::mul(
            &Expr::num(int_part),
            &intern(ExprKind::Pow(Expr::num(Rat::from_integer(p)), frac)),
        )
    }
}

/// Trial-division prime factorization of a positive integer; gives up on
/// large composites rather than spending unbounded time.
fn prime_split(v: &BigInt) -> Option<Vec<(BigInt, i64)>> {
    if !v.is_positive() {
        return None;
    }
    let mut n = v.clone();
    let mut out = Vec::new();
    let mut push = |p: BigInt, k: i64| {
        if k > 0 {
            out.push((p, k));
        }
    };
    let mut k = 0;
    while (&n % 2u32).is_zero() {
        n /= 2u32;
        k += 1;
    }
    push(BigInt::from(2), k);
    let mut d = BigInt::from(3);
    let limit = BigInt::from(65536u32);
    while &d * &d <= n && d < limit {
        let mut k = 0;
        while (&n % &d).is_zero() {
            n = &n / &d;
            k += 1;
        }
        push(d.clone(), k);
        d += 2;
    }
    if n.is_one() {
        Some(out)
    } else if &n < &(&limit * &limit) {
        push(n, 1);
        Some(out)
    } else {
        None
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::printer::write_expr(f, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_q;

    fn q() -> Expr {
        Expr::sym("q")
    }

    #[test]
    fn like_terms_merge() {
        let a = Expr::mul(&Expr::int(3), &q());
        let b = Expr::mul(&Expr::int(-3), &q());
        assert!(Expr::add(&a, &b).is_zero());
    }

    #[test]
    fn like_bases_merge() {
        let e = Expr::mul(&Expr::powi(&q(), 2), &q());
        assert_eq!(e, Expr::powi(&q(), 3));
    }

    #[test]
    fn sqrt_times_sqrt_folds() {
        let s = Expr::pow(&q(), rat_q(1, 2));
        assert_eq!(Expr::mul(&s, &s), q());
        let r2 = Expr::pow(&Expr::int(2), rat_q(1, 2));
        assert_eq!(Expr::mul(&r2, &r2), Expr::int(2));
    }

    #[test]
    fn numeric_power_splits() {
        // 8^(1/2) = 2*2^(1/2)
        let e = Expr::pow(&Expr::int(8), rat_q(1, 2));
        let expected = Expr::mul(&Expr::int(2), &Expr::pow(&Expr::int(2), rat_q(1, 2)));
        assert_eq!(e, expected);
    }

    #[test]
    fn exp_canonicalization() {
        let x = Expr::sym("x");
        let a = Expr::sym("alpha");
        // exp(2x) = exp(x)^2
        let e1 = Expr::exp_of(&Expr::mul(&Expr::int(2), &x));
        let e2 = Expr::powi(&Expr::exp_of(&x), 2);
        assert_eq!(e1, e2);
        // exp(a*ln x + ln x) = x * exp(a ln x)
        let alnx = Expr::mul(&a, &Expr::ln_of(&x));
        let e3 = Expr::exp_of(&Expr::add(&alnx, &Expr::ln_of(&x)));
        let e4 = Expr::mul(&x, &Expr::exp_of(&alnx));
        assert_eq!(e3, e4);
        // exp(-t) * exp(t) = 1
        let t = Expr::mul(&a, &x);
        let p = Expr::mul(&Expr::exp_of(&t), &Expr::exp_of(&Expr::neg(&t)));
        assert!(p.is_one());
    }

    #[test]
    fn ln_canonicalization() {
        let x = Expr::sym("x");
        assert!(Expr::ln_of(&Expr::one()).is_zero());
        assert_eq!(Expr::ln_of(&Expr::exp_of(&x)), x);
        // ln(x^3) = 3 ln x
        assert_eq!(
            Expr::ln_of(&Expr::powi(&x, 3)),
            Expr::mul(&Expr::int(3), &Expr::ln_of(&x))
        );
        // ln(4) = 2 ln 2
        assert_eq!(
            Expr::ln_of(&Expr::int(4)),
            Expr::mul(&Expr::int(2), &Expr::ln_of(&Expr::int(2)))
        );
    }

    #[test]
    fn deterministic_ordering() {
        let e1 = Expr::add_all(&[Expr::sym("y"), Expr::sym("x"), Expr::int(1)]);
        let e2 = Expr::add_all(&[Expr::int(1), Expr::sym("x"), Expr::sym("y")]);
        assert_eq!(e1, e2);
    }

    #[test]
    fn simultaneous_power_flatten() {
        let x = Expr::sym("x");
        let e = Expr::pow(&Expr::pow(&x, rat_q(1, 2)), rat_q(1, 2));
        assert_eq!(e, Expr::pow(&x, rat_q(1, 4)));
    }
}
