//! Sparse multivariate polynomials over exact rationals.
//!
//! Monomials map *atoms* (interned expressions treated as opaque
//! multiplicative bases: symbols, `exp`/`ln` applications, prime
//! numerals under fractional powers, unexpandable fractional powers of
//! sums) to rational exponents. Rational exponents make `q^(3/2)`-style
//! arithmetic exact without auxiliary root symbols. Exponent denominators
//! are preserved by ring operations, so exact division terminates on the
//! discrete exponent grid the operands span.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;

use crate::expr::Expr;
use crate::rat::{rat_gcd, Rat, Rex};

pub type AtomId = u32;

static ATOMS: Lazy<Mutex<(HashMap<u64, AtomId>, Vec<Expr>)>> =
    Lazy::new(|| Mutex::new((HashMap::new(), Vec::new())));

/// Interns an expression as an atom, returning its id.
pub fn atom_id(e: &Expr) -> AtomId {
    let mut t = ATOMS.lock().unwrap();
    if let Some(&id) = t.0.get(&e.id()) {
        return id;
    }
    let id = t.1.len() as AtomId;
    t.0.insert(e.id(), id);
    t.1.push(e.clone());
    id
}

/// The expression an atom id stands for.
pub fn atom_expr(id: AtomId) -> Expr {
    ATOMS.lock().unwrap().1[id as usize].clone()
}

/// A monomial: sorted `(atom, exponent)` pairs with nonzero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(Box<[(AtomId, Rex)]>);

impl Mono {
    pub fn one() -> Mono {
        Mono(Box::new([]))
    }

    pub fn from_pairs(mut pairs: Vec<(AtomId, Rex)>) -> Mono {
        pairs.retain(|(_, e)| !e.is_zero());
        pairs.sort_by_key(|&(a, _)| a);
        Mono(pairs.into_boxed_slice())
    }

    pub fn atom(a: AtomId, e: Rex) -> Mono {
        if e.is_zero() {
            Mono::one()
        } else {
            Mono(Box::new([(a, e)]))
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(AtomId, Rex)] {
        &self.0
    }

    pub fn exponent_of(&self, a: AtomId) -> Rex {
        self.0
            .iter()
            .find(|&&(b, _)| b == a)
            .map(|&(_, e)| e)
            .unwrap_or_else(|| Rex::from_integer(0))
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, ea) = self.0[i];
            let (b, eb) = other.0[j];
            match a.cmp(&b) {
                Ordering::Less => {
                    out.push((a, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    let e = ea + eb;
                    if !e.is_zero() {
                        out.push((a, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Mono(out.into_boxed_slice())
    }

    /// Quotient monomial if every resulting exponent stays nonnegative.
    pub fn try_div(&self, other: &Mono) -> Option<Mono> {
        let mut out = Vec::with_capacity(self.0.len());
        let (mut i, mut j) = (0, 0);
        while j < other.0.len() {
            let (b, eb) = other.0[j];
            // Find b among our atoms.
            let mut found = false;
            while i < self.0.len() {
                let (a, ea) = self.0[i];
                if a < b {
                    out.push((a, ea));
                    i += 1;
                } else if a == b {
                    let e = ea - eb;
                    if e.is_negative() {
                        return None;
                    }
                    if !e.is_zero() {
                        out.push((a, e));
                    }
                    i += 1;
                    found = true;
                    break;
                } else {
                    break;
                }
            }
            if !found {
                return None;
            }
            j += 1;
        }
        out.extend_from_slice(&self.0[i..]);
        Some(Mono(out.into_boxed_slice()))
    }

    pub fn pow(&self, k: Rex) -> Mono {
        if k.is_zero() {
            return Mono::one();
        }
        Mono(self.0.iter().map(|&(a, e)| (a, e * k)).collect())
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    /// Lexicographic monomial order over atoms in ascending id, treating
    /// missing atoms as exponent zero. Compatible with multiplication.
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, ea)), None) => {
                    return if ea.is_positive() {
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    }
                }
                (None, Some(&(_, eb))) => {
                    return if eb.is_positive() {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    }
                }
                (Some(&(a, ea)), Some(&(b, eb))) => match a.cmp(&b) {
                    Ordering::Less => {
                        if ea.is_positive() {
                            return Ordering::Greater;
                        }
                        if ea.is_negative() {
                            return Ordering::Less;
                        }
                        i += 1;
                    }
                    Ordering::Greater => {
                        if eb.is_positive() {
                            return Ordering::Less;
                        }
                        if eb.is_negative() {
                            return Ordering::Greater;
                        }
                        j += 1;
                    }
                    Ordering::Equal => {
                        match ea.cmp(&eb) {
                            Ordering::Equal => {}
                            o => return o,
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

/// Sparse polynomial: monomial -> nonzero rational coefficient.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rat) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(), c);
        }
        Poly { terms }
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    pub fn term(m: Mono, c: Rat) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn as_constant(&self) -> Option<&Rat> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c);
            }
        }
        if self.terms.is_empty() {
            // Zero is constant but callers want the coefficient; handled above.
            return None;
        }
        None
    }

    pub fn as_single_term(&self) -> Option<(&Mono, &Rat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Mono, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        // Multiply the smaller term set into the larger one.
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = Poly::zero();
        for (m, c) in &small.terms {
            for (mm, cc) in &large.terms {
                out.add_term(m.mul(mm), c * cc);
            }
        }
        out
    }

    pub fn pow_u(&self, k: u64) -> Poly {
        if k == 0 {
            return Poly::one();
        }
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut n = k;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Per-atom minimum exponent over all terms (absent atoms count as 0).
    /// The returned monomial divides every term.
    pub fn mono_content(&self) -> Mono {
        let mut mins: BTreeMap<AtomId, (Rex, usize)> = BTreeMap::new();
        for (m, _) in &self.terms {
            for &(a, e) in m.pairs() {
                let entry = mins.entry(a).or_insert((e, 0));
                if e < entry.0 {
                    entry.0 = e;
                }
                entry.1 += 1;
            }
        }
        let n = self.terms.len();
        let pairs: Vec<(AtomId, Rex)> = mins
            .into_iter()
            .map(|(a, (mut min, count))| {
                if count < n && min.is_positive() {
                    min = Rex::from_integer(0);
                }
                (a, min)
            })
            .filter(|(_, e)| !e.is_zero())
            .collect();
        Mono::from_pairs(pairs)
    }

    /// Positive gcd of all coefficients.
    pub fn rat_content(&self) -> Rat {
        let mut g = Rat::zero();
        for c in self.terms.values() {
            g = rat_gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Extracts rational and monomial content and normalizes the sign so
    /// the leading coefficient is positive. Returns `(coeff, mono, primitive)`
    /// with `self = coeff * mono * primitive`.
    pub fn normalize_full(&self) -> (Rat, Mono, Poly) {
        if self.is_zero() {
            return (Rat::zero(), Mono::one(), Poly::zero());
        }
        let mono = self.mono_content();
        let mut coeff = self.rat_content();
        if self.leading().unwrap().1.is_negative() {
            coeff = -coeff;
        }
        let inv = coeff.recip();
        let prim = Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.try_div(&mono).expect("content divides"), c * &inv))
                .collect(),
        };
        (coeff, mono, prim)
    }

    /// Exact division; `None` when `other` does not divide `self`.
    /// Operands must have nonnegative exponents.
    pub fn exact_div(&self, other: &Poly) -> Option<Poly> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (dm, dc) = other.leading().unwrap();
        let mut rem = self.clone();
        let mut quo = Poly::zero();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().unwrap();
            let qm = rm.try_div(dm)?;
            let qc = rc / dc;
            rem = rem.sub(&other.mul_term(&qm, &qc));
            quo.add_term(qm, qc);
        }
        Some(quo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat_i, rex_int};

    fn atom(name: &str) -> AtomId {
        atom_id(&Expr::sym(name))
    }

    #[test]
    fn mono_order_is_multiplicative() {
        let x = atom("t_x");
        let y = atom("t_y");
        let z = atom("t_z");
        let mx = Mono::atom(x, rex_int(1));
        let mxy = mx.mul(&Mono::atom(y, rex_int(1)));
        assert!(mx < mxy);
        let mz = Mono::atom(z, rex_int(1));
        assert!(mx.mul(&mz) < mxy.mul(&mz));
    }

    #[test]
    fn exact_division() {
        let x = atom("u_x");
        // (x^2 - 1) / (x - 1) = x + 1
        let x1 = Mono::atom(x, rex_int(1));
        let x2 = Mono::atom(x, rex_int(2));
        let mut num = Poly::zero();
        num.add_term(x2, rat_i(1));
        num.add_term(Mono::one(), rat_i(-1));
        let mut den = Poly::zero();
        den.add_term(x1.clone(), rat_i(1));
        den.add_term(Mono::one(), rat_i(-1));
        let q = num.exact_div(&den).unwrap();
        let mut expect = Poly::zero();
        expect.add_term(x1, rat_i(1));
        expect.add_term(Mono::one(), rat_i(1));
        assert_eq!(q, expect);

        // Non-divisible case
        let mut num2 = Poly::zero();
        num2.add_term(Mono::atom(x, rex_int(2)), rat_i(1));
        num2.add_term(Mono::one(), rat_i(1));
        assert!(num2.exact_div(&den).is_none());
    }

    #[test]
    fn content_extraction() {
        let x = atom("v_x");
        let y = atom("v_y");
        // 4x^2y + 6x^3y^2 = 2x^2y * (2 + 3xy)
        let mut p = Poly::zero();
        p.add_term(
            Mono::from_pairs(vec![(x, rex_int(2)), (y, rex_int(1))]),
            rat_i(4),
        );
        p.add_term(
            Mono::from_pairs(vec![(x, rex_int(3)), (y, rex_int(2))]),
            rat_i(6),
        );
        let (c, m, prim) = p.normalize_full();
        assert_eq!(c, rat_i(2));
        assert_eq!(m, Mono::from_pairs(vec![(x, rex_int(2)), (y, rex_int(1))]));
        assert_eq!(prim.num_terms(), 2);
        assert_eq!(prim.mul_term(&m, &c), p);
    }
}
