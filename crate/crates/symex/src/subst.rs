//! Simultaneous substitution of expressions for symbols.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::expr::{Expr, ExprKind};

/// Simultaneous (not sequential) substitution: all bindings refer to the
/// original expression, so swapping `x -> y, y -> x` exchanges the two.
/// The result is rebuilt through the canonicalizing constructors.
pub fn substitute(e: &Expr, bindings: &BTreeMap<Arc<str>, Expr>) -> Expr {
    let mut memo: HashMap<u64, Expr> = HashMap::new();
    subst_rec(e, bindings, &mut memo)
}

/// Convenience wrapper taking `(name, replacement)` pairs.
pub fn substitute_pairs(e: &Expr, pairs: &[(&str, Expr)]) -> Expr {
    let map: BTreeMap<Arc<str>, Expr> = pairs
        .iter()
        .map(|(n, r)| (Arc::<str>::from(*n), r.clone()))
        .collect();
    substitute(e, &map)
}

fn subst_rec(e: &Expr, b: &BTreeMap<Arc<str>, Expr>, memo: &mut HashMap<u64, Expr>) -> Expr {
    if let Some(r) = memo.get(&e.id()) {
        return r.clone();
    }
    let out = match e.kind() {
        ExprKind::Num(_) => e.clone(),
        ExprKind::Sym(s) => b.get(s).cloned().unwrap_or_else(|| e.clone()),
        ExprKind::Sum(cs) => {
            let parts: Vec<Expr> = cs.iter().map(|c| subst_rec(c, b, memo)).collect();
            Expr::add_all(&parts)
        }
        ExprKind::Prod(cs) => {
            let parts: Vec<Expr> = cs.iter().map(|c| subst_rec(c, b, memo)).collect();
            Expr::mul_all(&parts)
        }
        ExprKind::Pow(base, ex) => Expr::pow(&subst_rec(base, b, memo), ex.clone()),
        ExprKind::Exp(a) => Expr::exp_of(&subst_rec(a, b, memo)),
        ExprKind::Ln(a) => Expr::ln_of(&subst_rec(a, b, memo)),
    };
    memo.insert(e.id(), out.clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    #[test]
    fn substitution_is_simultaneous() {
        let e = parse("x*y").unwrap();
        let out = substitute_pairs(&e, &[("x", Expr::sym("y")), ("y", Expr::sym("x"))]);
        assert_eq!(out, e);

        let e2 = parse("x + 2*y").unwrap();
        let out2 = substitute_pairs(&e2, &[("x", Expr::sym("y")), ("y", Expr::sym("x"))]);
        assert_eq!(out2, parse("y + 2*x").unwrap());
    }

    #[test]
    fn substitute_into_functions() {
        let e = parse("x + y").unwrap();
        let out = substitute_pairs(&e, &[("x", Expr::ln_of(&Expr::sym("x")))]);
        assert_eq!(out, parse("ln(x) + y").unwrap());
    }
}
