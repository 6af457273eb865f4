//! Brute-force verification of the 35-generator vector-field algebra.
//!
//! The generators ship as a checked-in, checksummed data file of 43
//! polynomial coefficients each (one operator per line, in bracket
//! order), rather than hard-coded constructors, so the transcription
//! can be audited line by line. The verifier recomputes every
//! commutator in exact rational arithmetic and compares it against the
//! nonzero-commutator table; it also confirms the solvable chain of
//! subalgebras and that the reduced operator systems annihilate the
//! invariant formulas. Any mismatch is reported with a minimal witness
//! and the run continues.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use sha2::{Digest, Sha256};
use symex::rat::Rat;
use symex::zero::Trit;
use symex::{differentiate, equals_zero, simplify, Expr, ZeroPolicy};

use crate::error::OdeError;
use crate::invariants::{alpha_chain, beta_chain, gamma_chain, GammaSet, LambdaSet};

const APPENDIX_A: &str = include_str!("../data/appendix_a.ops");
const APPENDIX_B: &str = include_str!("../data/appendix_b.tab");
const LAMBDA_OPS: &str = include_str!("../data/lambda_ops.ops");
const GAMMA_OPS: &str = include_str!("../data/gamma_ops.ops");

/// Sparse polynomial over the coordinates `z1..z43` with exact rational
/// coefficients. Monomials are sorted `(variable, exponent)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Poly43 {
    terms: BTreeMap<Vec<(u8, u8)>, Rat>,
}

impl Poly43 {
    pub fn zero() -> Poly43 {
        Poly43 {
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant(c: Rat) -> Poly43 {
        let mut p = Poly43::zero();
        p.add_term(vec![], c);
        p
    }

    pub fn var(v: u8) -> Poly43 {
        let mut p = Poly43::zero();
        p.add_term(vec![(v, 1)], Rat::one());
        p
    }

    pub fn add_term(&mut self, mono: Vec<(u8, u8)>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
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

    pub fn add(&self, other: &Poly43) -> Poly43 {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly43) -> Poly43 {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Poly43 {
        if c.is_zero() {
            return Poly43::zero();
        }
        Poly43 {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly43) -> Poly43 {
        let mut out = Poly43::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut m: BTreeMap<u8, u8> = ma.iter().cloned().collect();
                for &(v, e) in mb {
                    *m.entry(v).or_insert(0) += e;
                }
                out.add_term(m.into_iter().collect(), ca * cb);
            }
        }
        out
    }

    /// Partial derivative with respect to `z<v>`.
    pub fn diff(&self, v: u8) -> Poly43 {
        let mut out = Poly43::zero();
        for (m, c) in &self.terms {
            if let Some(&(_, e)) = m.iter().find(|&&(w, _)| w == v) {
                let mut lowered: Vec<(u8, u8)> = m
                    .iter()
                    .filter_map(|&(w, k)| {
                        if w == v {
                            if k > 1 {
                                Some((w, k - 1))
                            } else {
                                None
                            }
                        } else {
                            Some((w, k))
                        }
                    })
                    .collect();
                lowered.sort_unstable();
                out.add_term(lowered, c * Rat::from_integer(e.into()));
            }
        }
        out
    }
}

impl std::fmt::Display for Poly43 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for &(v, e) in m {
                if e == 1 {
                    write!(f, "*z{v}")?;
                } else {
                    write!(f, "*z{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// One generator: 43 polynomial coefficients, `A = [a1..a43]` standing
/// for `sum_j a_j d/dz_j`.
#[derive(Debug, Clone)]
pub struct VectorField43 {
    pub name: String,
    pub coeffs: Vec<Poly43>,
}

impl VectorField43 {
    /// Applies the derivation to a polynomial.
    pub fn apply(&self, p: &Poly43) -> Poly43 {
        let mut out = Poly43::zero();
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let dp = p.diff((j + 1) as u8);
            if !dp.is_zero() {
                out = out.add(&a.mul(&dp));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly43::is_zero)
    }
}

/// Exact commutator `[a, b]`, coefficient-wise `a(b_k) - b(a_k)`.
pub fn commutator(a: &VectorField43, b: &VectorField43) -> VectorField43 {
    let coeffs = (0..43)
        .map(|k| a.apply(&b.coeffs[k]).sub(&b.apply(&a.coeffs[k])))
        .collect();
    VectorField43 {
        name: format!("[{},{}]", a.name, b.name),
        coeffs,
    }
}

fn checksum_split(src: &str, what: &str) -> Result<Vec<String>, OdeError> {
    let mut payload_lines = Vec::new();
    let mut expected = None;
    for line in src.lines() {
        if let Some(rest) = line.strip_prefix("# sha256: ") {
            expected = Some(rest.trim().to_string());
        } else if line.starts_with('#') || line.trim().is_empty() {
            continue;
        } else {
            payload_lines.push(line.to_string());
        }
    }
    let expected =
        expected.ok_or_else(|| OdeError::DataFile(format!("{what}: missing checksum line")))?;
    let payload = payload_lines.join("\n") + "\n";
    let digest = format!("{:x}", Sha256::digest(payload.as_bytes()));
    if digest != expected {
        return Err(OdeError::DataFile(format!(
            "{what}: checksum mismatch (expected {expected}, computed {digest})"
        )));
    }
    Ok(payload_lines)
}

/// Converts a parsed entry into a `Poly43`. Entries are polynomials in
/// `<prefix>1..<prefix><nvars>` with rational coefficients.
fn expr_to_poly43(e: &Expr, prefix: &str, nvars: u8, what: &str) -> Result<Poly43, OdeError> {
    let f = symex::normalize::normalize(e)
        .map_err(|err| OdeError::DataFile(format!("{what}: {err}")))?;
    let (num, den) = symex::factored::to_num_den(&f);
    let den_c = den
        .as_constant()
        .cloned()
        .ok_or_else(|| OdeError::DataFile(format!("{what}: entry is not polynomial: {e}")))?;
    let mut out = Poly43::zero();
    for (m, c) in num.terms() {
        let mut mono = Vec::new();
        for &(atom, exp) in m.pairs() {
            let ax = symex::poly::atom_expr(atom);
            let name = ax
                .as_sym()
                .ok_or_else(|| OdeError::DataFile(format!("{what}: non-symbol atom in {e}")))?
                .to_string();
            let idx: u8 = name
                .strip_prefix(prefix)
                .and_then(|s| s.parse().ok())
                .filter(|&i| i >= 1 && i <= nvars)
                .ok_or_else(|| {
                    OdeError::DataFile(format!("{what}: unexpected symbol `{name}` in {e}"))
                })?;
            if !exp.is_integer() || exp.is_negative() {
                return Err(OdeError::DataFile(format!(
                    "{what}: non-polynomial exponent in {e}"
                )));
            }
            mono.push((idx, *exp.numer() as u8));
        }
        mono.sort_unstable();
        out.add_term(mono, c / &den_c);
    }
    Ok(out)
}

fn parse_op_line(
    line: &str,
    prefix: &str,
    nvars: u8,
    what: &str,
) -> Result<(String, Vec<Poly43>), OdeError> {
    let (name, rest) = line
        .split_once(':')
        .ok_or_else(|| OdeError::DataFile(format!("{what}: malformed line `{line}`")))?;
    let rest = rest.trim();
    let inner = rest
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| OdeError::DataFile(format!("{what}: expected bracket list in `{line}`")))?;
    let mut coeffs = Vec::with_capacity(nvars as usize);
    for entry in split_top_level(inner) {
        let e = symex::parse(entry.trim())
            .map_err(|err| OdeError::DataFile(format!("{what}: {err} in `{entry}`")))?;
        coeffs.push(expr_to_poly43(&e, prefix, nvars, what)?);
    }
    if coeffs.len() != nvars as usize {
        return Err(OdeError::DataFile(format!(
            "{what}: {} has {} entries, expected {nvars}",
            name,
            coeffs.len()
        )));
    }
    Ok((name.trim().to_string(), coeffs))
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Loads the 35 generators from the embedded data file, verifying the
/// checksum. `e1..e28` are the y-side operators, `e29..e35` the x-side.
pub fn load_appendix_a() -> Result<Vec<VectorField43>, OdeError> {
    let lines = checksum_split(APPENDIX_A, "appendix_a.ops")?;
    if lines.len() != 35 {
        return Err(OdeError::DataFile(format!(
            "appendix_a.ops: {} operators, expected 35",
            lines.len()
        )));
    }
    let mut out = Vec::with_capacity(35);
    for (k, line) in lines.iter().enumerate() {
        let (name, coeffs) = parse_op_line(line, "z", 43, "appendix_a.ops")?;
        if name != format!("e{}", k + 1) {
            return Err(OdeError::DataFile(format!(
                "appendix_a.ops: expected e{} on line {}, found {name}",
                k + 1,
                k + 1
            )));
        }
        out.push(VectorField43 { name, coeffs });
    }
    Ok(out)
}

/// The expected nonzero commutators: `(i, j) -> (coefficient, k)`
/// meaning `[e_i, e_j] = coefficient * e_k`; absent pairs are zero.
pub type StructureTable = BTreeMap<(u8, u8), (Rat, u8)>;

pub fn load_appendix_b() -> Result<StructureTable, OdeError> {
    let lines = checksum_split(APPENDIX_B, "appendix_b.tab")?;
    let mut out = StructureTable::new();
    for line in &lines {
        // Shape: [e<i>,e<j>] = <c>e<k>
        let err = || OdeError::DataFile(format!("appendix_b.tab: malformed `{line}`"));
        let rest = line.strip_prefix("[e").ok_or_else(err)?;
        let (i, rest) = rest.split_once(",e").ok_or_else(err)?;
        let (j, rest) = rest.split_once("] = ").ok_or_else(err)?;
        let rhs = rest.trim();
        let (c_str, k_str) = match rhs.find('e') {
            Some(pos) => (&rhs[..pos], &rhs[pos + 1..]),
            None => return Err(err()),
        };
        let c = match c_str {
            "" => Rat::one(),
            "-" => -Rat::one(),
            s => Rat::from_integer(s.parse::<i64>().map_err(|_| err())?.into()),
        };
        let i: u8 = i.parse().map_err(|_| err())?;
        let j: u8 = j.parse().map_err(|_| err())?;
        let k: u8 = k_str.parse().map_err(|_| err())?;
        if out.insert((i, j), (c, k)).is_some() {
            return Err(OdeError::DataFile(format!(
                "appendix_b.tab: duplicate pair [e{i},e{j}]"
            )));
        }
    }
    Ok(out)
}

/// A commutator that disagrees with the table, with both sides printed.
#[derive(Debug, Clone)]
pub struct Mismatch {
    pub i: u8,
    pub j: u8,
    /// First coordinate (1-based) where the polynomials differ.
    pub coordinate: u8,
    pub computed: String,
    pub expected: String,
}

#[derive(Debug, Clone)]
pub struct TableReport {
    pub pairs_checked: usize,
    pub nonzero_expected: usize,
    pub mismatches: Vec<Mismatch>,
}

impl TableReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Computes all 595 unordered commutators exactly and compares them
/// against the table (zero when the pair is absent).
pub fn verify_commutator_table() -> Result<TableReport, OdeError> {
    let fields = load_appendix_a()?;
    let table = load_appendix_b()?;
    let mut mismatches = Vec::new();
    let mut pairs = 0;
    for i in 0..35usize {
        for j in (i + 1)..35usize {
            pairs += 1;
            let c = commutator(&fields[i], &fields[j]);
            let expected = expected_bracket(&fields, &table, (i + 1) as u8, (j + 1) as u8);
            for k in 0..43 {
                if c.coeffs[k] != expected.coeffs[k] {
                    mismatches.push(Mismatch {
                        i: (i + 1) as u8,
                        j: (j + 1) as u8,
                        coordinate: (k + 1) as u8,
                        computed: c.coeffs[k].to_string(),
                        expected: expected.coeffs[k].to_string(),
                    });
                    break;
                }
            }
        }
    }
    Ok(TableReport {
        pairs_checked: pairs,
        nonzero_expected: table.len(),
        mismatches,
    })
}

fn expected_bracket(
    fields: &[VectorField43],
    table: &StructureTable,
    i: u8,
    j: u8,
) -> VectorField43 {
    let mut entry = table.get(&(i, j)).cloned();
    let mut sign = Rat::one();
    if entry.is_none() {
        if let Some((c, k)) = table.get(&(j, i)) {
            entry = Some((c.clone(), *k));
            sign = -Rat::one();
        }
    }
    match entry {
        Some((c, k)) => {
            let base = &fields[(k - 1) as usize];
            VectorField43 {
                name: format!("{c}*e{k}"),
                coeffs: base.coeffs.iter().map(|p| p.scale(&(&c * &sign))).collect(),
            }
        }
        None => VectorField43 {
            name: "0".to_string(),
            coeffs: vec![Poly43::zero(); 43],
        },
    }
}

/// Jacobi identity on seeded random triples, in exact arithmetic.
pub fn verify_jacobi(samples: usize, seed: u64) -> Result<(usize, Vec<(u8, u8, u8)>), OdeError> {
    use rand::{Rng, SeedableRng};
    let fields = load_appendix_a()?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..samples {
        let a = rng.gen_range(0..35usize);
        let b = rng.gen_range(0..35usize);
        let c = rng.gen_range(0..35usize);
        let ab_c = commutator(&commutator(&fields[a], &fields[b]), &fields[c]);
        let bc_a = commutator(&commutator(&fields[b], &fields[c]), &fields[a]);
        let ca_b = commutator(&commutator(&fields[c], &fields[a]), &fields[b]);
        let bad = (0..43).any(|k| {
            !ab_c.coeffs[k]
                .add(&bc_a.coeffs[k])
                .add(&ca_b.coeffs[k])
                .is_zero()
        });
        if bad {
            failures.push(((a + 1) as u8, (b + 1) as u8, (c + 1) as u8));
        }
    }
    Ok((samples, failures))
}

/// The solvable chain: members of each level, 1-based generator indices.
pub fn chain_levels() -> Vec<Vec<u8>> {
    let g1 = vec![22, 23, 24, 25, 26, 27, 28];
    let add = |prev: &[u8], more: &[u8]| {
        let mut v = prev.to_vec();
        v.extend_from_slice(more);
        v
    };
    let g2 = add(&g1, &[16, 17, 18, 19, 20, 21]);
    let g3 = add(&g2, &[11, 12, 13, 14, 15]);
    let g4 = add(&g3, &[7, 8, 9, 10]);
    let g5 = add(&g4, &[4, 5, 6]);
    let g6 = add(&g5, &[33, 34, 35]);
    let g7 = add(&g6, &[31, 32]);
    let g8 = add(&g7, &[1, 2, 3, 29, 30]);
    vec![g1, g2, g3, g4, g5, g6, g7, g8]
}

#[derive(Debug, Clone)]
pub struct ChainReport {
    /// One entry per inclusion `[G_{k+1}, G_k] subset span(G_k)`,
    /// k = 0..7, where `G_0 = 0` turns the k = 0 case into `G_1` being
    /// closed with zero brackets.
    pub inclusions: Vec<(usize, bool, Option<String>)>,
    pub g1_abelian: bool,
    pub closure_ok: bool,
}

impl ChainReport {
    pub fn ok(&self) -> bool {
        self.inclusions.iter().all(|(_, ok, _)| *ok) && self.g1_abelian && self.closure_ok
    }
}

/// Confirms the chain of ideals using the structure table (which
/// `verify_commutator_table` validates against exact recomputation).
pub fn verify_solvable_chain() -> Result<ChainReport, OdeError> {
    let table = load_appendix_b()?;
    let levels = chain_levels();
    let bracket_target = |i: u8, j: u8| -> Option<u8> {
        table
            .get(&(i, j))
            .or_else(|| table.get(&(j, i)))
            .map(|&(_, k)| k)
    };
    let mut inclusions = Vec::new();
    for k in 0..levels.len() {
        let upper = &levels[k];
        let lower: Vec<u8> = if k == 0 { Vec::new() } else { levels[k - 1].clone() };
        let pair_side: Vec<u8> = if k == 0 { upper.clone() } else { lower.clone() };
        let mut ok = true;
        let mut witness = None;
        for &i in upper {
            for &j in &pair_side {
                if i == j {
                    continue;
                }
                if let Some(t) = bracket_target(i, j) {
                    if !lower.contains(&t) {
                        ok = false;
                        let mut w = String::new();
                        let _ = write!(w, "[e{i},e{j}] lands on e{t} outside the lower level");
                        witness = Some(w);
                    }
                }
            }
        }
        inclusions.push((k, ok, witness));
    }
    let g1 = &levels[0];
    let g1_abelian = g1
        .iter()
        .all(|&i| g1.iter().all(|&j| i == j || bracket_target(i, j).is_none()));
    let closure_ok = table.values().all(|&(_, k)| (1..=35).contains(&k));
    Ok(ChainReport {
        inclusions,
        g1_abelian,
        closure_ok,
    })
}

/// A reduced first-order operator over free symbols, e.g. the system in
/// the gamma variables.
#[derive(Debug, Clone)]
pub struct ReducedOp {
    pub name: String,
    /// Coefficient expression per variable, 1-based.
    pub coeffs: Vec<Expr>,
    pub prefix: String,
}

impl ReducedOp {
    /// Applies the derivation `sum_i c_i d/d<prefix>i` to an expression
    /// in the free symbols.
    pub fn apply(&self, j: &Expr) -> Expr {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = format!("{}{}", self.prefix, i + 1);
            let dj = differentiate(j, &v);
            if !dj.is_zero() {
                terms.push(Expr::mul(c, &dj));
            }
        }
        simplify(&Expr::add_all(&terms))
    }
}

fn load_reduced(
    src: &str,
    prefix: &str,
    nvars: u8,
    what: &str,
) -> Result<Vec<ReducedOp>, OdeError> {
    let lines = checksum_split(src, what)?;
    let mut out = Vec::new();
    for line in &lines {
        let (name, rest) = line
            .split_once(':')
            .ok_or_else(|| OdeError::DataFile(format!("{what}: malformed `{line}`")))?;
        let inner = rest
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| OdeError::DataFile(format!("{what}: expected list in `{line}`")))?;
        let mut coeffs = Vec::new();
        for entry in split_top_level(inner) {
            coeffs.push(
                symex::parse(entry.trim())
                    .map_err(|e| OdeError::DataFile(format!("{what}: {e} in `{entry}`")))?,
            );
        }
        if coeffs.len() != nvars as usize {
            return Err(OdeError::DataFile(format!(
                "{what}: {name} has {} entries, expected {nvars}",
                coeffs.len()
            )));
        }
        out.push(ReducedOp {
            name: name.trim().to_string(),
            coeffs,
            prefix: prefix.to_string(),
        });
    }
    Ok(out)
}

/// The five reduced operators in the gamma variables.
pub fn gamma_operators() -> Result<Vec<ReducedOp>, OdeError> {
    load_reduced(GAMMA_OPS, "g", 20, "gamma_ops.ops")
}

/// The nine reduced operators in the lambda variables.
pub fn lambda_operators() -> Result<Vec<ReducedOp>, OdeError> {
    load_reduced(LAMBDA_OPS, "l", 24, "lambda_ops.ops")
}

/// The beta formulas over free gamma symbols `g4..g16`.
pub fn beta_formulas_in_gamma() -> crate::invariants::BetaSet<Expr> {
    let g = GammaSet::from_fn(|i| Expr::sym(&format!("g{i}")));
    beta_chain(&g)
}

/// The alpha formulas over free lambda symbols (`alpha_1` is `l1`).
pub fn alpha_formulas_in_lambda() -> crate::invariants::AlphaSet<Expr> {
    let l = LambdaSet::from_fn(|i| Expr::sym(&format!("l{i}")));
    alpha_chain(&l, Expr::sym("l1"))
}

/// The gamma formulas over free lambda symbols (for the cross-check
/// that the cut system annihilates them).
pub fn gamma_formulas_in_lambda() -> GammaSet<Expr> {
    let l = LambdaSet::from_fn(|i| Expr::sym(&format!("l{i}")));
    gamma_chain(&l)
}

#[derive(Debug, Clone)]
pub struct AnnihilationReport {
    /// (operator name, invariant index, annihilated?)
    pub results: Vec<(String, usize, bool)>,
}

impl AnnihilationReport {
    pub fn ok(&self) -> bool {
        self.results.iter().all(|(_, _, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&(String, usize, bool)> {
        self.results.iter().filter(|(_, _, ok)| !ok).collect()
    }
}

/// Applies the five gamma-system operators to the eleven beta formulas
/// (symbolically, over free gamma symbols); all 55 images must vanish.
pub fn verify_gamma_annihilation() -> Result<AnnihilationReport, OdeError> {
    let ops = gamma_operators()?;
    let betas = beta_formulas_in_gamma();
    let mut results = Vec::new();
    for op in &ops {
        for (i, b) in betas.iter() {
            let image = op.apply(b);
            let ok = equals_zero(&image, &ZeroPolicy::symbolic_only()) == Trit::Yes;
            results.push((op.name.clone(), i, ok));
        }
    }
    Ok(AnnihilationReport { results })
}

/// Applies the three lambda-system operators `X1..X3` to the seventeen
/// alpha formulas; all 51 images must vanish.
pub fn verify_alpha_annihilation() -> Result<AnnihilationReport, OdeError> {
    let ops = lambda_operators()?;
    let alphas = alpha_formulas_in_lambda();
    let mut results = Vec::new();
    for op in ops.iter().filter(|o| o.name.starts_with('X')) {
        for (i, a) in alphas.iter() {
            let image = op.apply(a);
            let ok = equals_zero(&image, &ZeroPolicy::symbolic_only()) == Trit::Yes;
            results.push((op.name.clone(), i, ok));
        }
    }
    Ok(AnnihilationReport { results })
}

/// Cross-check: the cut system `T3..T6` annihilates the gamma formulas
/// expressed in the lambda variables.
pub fn verify_gamma_cut_annihilation() -> Result<AnnihilationReport, OdeError> {
    let ops = lambda_operators()?;
    let gammas = gamma_formulas_in_lambda();
    let mut results = Vec::new();
    for op in ops
        .iter()
        .filter(|o| matches!(o.name.as_str(), "T3" | "T4" | "T5" | "T6"))
    {
        for (i, g) in gammas.iter() {
            let image = op.apply(g);
            let ok = equals_zero(&image, &ZeroPolicy::symbolic_only()) == Trit::Yes;
            results.push((op.name.clone(), i, ok));
        }
    }
    Ok(AnnihilationReport { results })
}

#[cfg(test)]
mod tests {
    use super::*;
    use symex::rat::rat_i;

    #[test]
    fn loads_and_checksums() {
        let fields = load_appendix_a().unwrap();
        assert_eq!(fields.len(), 35);
        // e1 = X1: single 1 at position 2
        assert_eq!(fields[0].coeffs[1], Poly43::constant(rat_i(1)));
        assert!(fields[0]
            .coeffs
            .iter()
            .enumerate()
            .all(|(k, p)| k == 1 || p.is_zero()));
        // e29 = T1: single 1 at position 1
        assert_eq!(fields[28].coeffs[0], Poly43::constant(rat_i(1)));
        // e2 = X2: 1 at position 3 and z40 at position 41
        assert_eq!(fields[1].coeffs[2], Poly43::constant(rat_i(1)));
        assert_eq!(fields[1].coeffs[40], Poly43::var(40));
        assert!(fields[1]
            .coeffs
            .iter()
            .enumerate()
            .all(|(k, p)| k == 2 || k == 40 || p.is_zero()));
    }

    #[test]
    fn bracket_antisymmetry_and_self() {
        let fields = load_appendix_a().unwrap();
        let ab = commutator(&fields[4], &fields[7]);
        let ba = commutator(&fields[7], &fields[4]);
        for k in 0..43 {
            assert_eq!(ab.coeffs[k], ba.coeffs[k].scale(&rat_i(-1)));
        }
        assert!(commutator(&fields[10], &fields[10]).is_zero());
    }

    #[test]
    fn spot_check_brackets() {
        let fields = load_appendix_a().unwrap();
        let table = load_appendix_b().unwrap();
        // [e2, e3] = e2
        let c = commutator(&fields[1], &fields[2]);
        for k in 0..43 {
            assert_eq!(c.coeffs[k], fields[1].coeffs[k], "coordinate {}", k + 1);
        }
        // [e1, e2] = 0 (absent from the table)
        assert!(commutator(&fields[0], &fields[1]).is_zero());
        assert!(!table.contains_key(&(1, 2)));
        // [e2, e5] = 2 e4
        let c = commutator(&fields[1], &fields[4]);
        for k in 0..43 {
            assert_eq!(c.coeffs[k], fields[3].coeffs[k].scale(&rat_i(2)));
        }
        // [e30, e35] = 5 e35
        let c = commutator(&fields[29], &fields[34]);
        for k in 0..43 {
            assert_eq!(c.coeffs[k], fields[34].coeffs[k].scale(&rat_i(5)));
        }
    }

    #[test]
    fn gamma_annihilation_spot() {
        let ops = gamma_operators().unwrap();
        let betas = beta_formulas_in_gamma();
        // T1 = d/dg1 annihilates every beta trivially.
        let t1 = ops.iter().find(|o| o.name == "T1").unwrap();
        for (_, b) in betas.iter() {
            assert!(t1.apply(b).is_zero());
        }
        // X3 on beta_1 = g6 g5/g4^4: (+4 - 2 - 2) beta_1 = 0.
        let x3 = ops.iter().find(|o| o.name == "X3").unwrap();
        assert!(x3.apply(betas.get(1)).is_zero());
        // T2 on beta_11 = g16 g5^3/g4^6.
        let t2 = ops.iter().find(|o| o.name == "T2").unwrap();
        assert!(t2.apply(betas.get(11)).is_zero());
    }
}
