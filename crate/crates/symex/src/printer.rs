//! Canonical text rendering. `parse(print(e))` reproduces `e` for
//! canonical trees, so printed reports can be fed back to the parser.

use std::fmt;

use num_traits::{One, Signed};

use crate::expr::{Expr, ExprKind};
use crate::rat::Rat;

pub fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    write_prec(f, e, 0)
}

fn write_rat(f: &mut fmt::Formatter<'_>, r: &Rat) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Precedence levels: 0 sum, 1 product, 2 power operand, 3 atom.
fn write_prec(f: &mut fmt::Formatter<'_>, e: &Expr, prec: u8) -> fmt::Result {
    match e.kind() {
        ExprKind::Num(r) => {
            if (r.is_negative() && prec > 0) || (!r.denom().is_one() && prec > 1) {
                write!(f, "(")?;
                write_rat(f, r)?;
                write!(f, ")")
            } else {
                write_rat(f, r)
            }
        }
        ExprKind::Sym(s) => write!(f, "{s}"),
        ExprKind::Sum(terms) => {
            if prec > 0 {
                write!(f, "(")?;
            }
            for (i, t) in terms.iter().enumerate() {
                let (c, core) = t.coeff_core();
                if i == 0 {
                    write_prec(f, t, 1)?;
                } else if c.is_negative() {
                    write!(f, " - ")?;
                    let flipped = if core.is_one() {
                        Expr::num(-c)
                    } else {
                        Expr::mul(&Expr::num(-c), &core)
                    };
                    write_prec(f, &flipped, 1)?;
                } else {
                    write!(f, " + ")?;
                    write_prec(f, t, 1)?;
                }
            }
            if prec > 0 {
                write!(f, ")")?;
            }
            Ok(())
        }
        ExprKind::Prod(_) => write_product(f, e, prec),
        ExprKind::Pow(b, ex) => {
            if ex.is_negative() && prec <= 1 {
                // Render as a quotient: q^(-2) inside a sum prints 1/q^2.
                return write_product(f, e, prec);
            }
            if prec > 2 {
                write!(f, "(")?;
            }
            write_prec(f, b, 3)?;
            write!(f, "^")?;
            if ex.denom().is_one() && !ex.is_negative() {
                write!(f, "{}", ex.numer())?;
            } else {
                write!(f, "(")?;
                write_rat(f, ex)?;
                write!(f, ")")?;
            }
            if prec > 2 {
                write!(f, ")")?;
            }
            Ok(())
        }
        ExprKind::Exp(a) => {
            write!(f, "exp(")?;
            write_prec(f, a, 0)?;
            write!(f, ")")
        }
        ExprKind::Ln(a) => {
            write!(f, "ln(")?;
            write_prec(f, a, 0)?;
            write!(f, ")")
        }
    }
}

fn write_factor(f: &mut fmt::Formatter<'_>, base: &Expr, ex: &Rat) -> fmt::Result {
    if ex.is_one() {
        write_prec(f, base, 2)
    } else {
        write_prec(f, base, 3)?;
        write!(f, "^")?;
        if ex.denom().is_one() && !ex.is_negative() {
            write!(f, "{}", ex.numer())
        } else {
            write!(f, "(")?;
            write_rat(f, ex)?;
            write!(f, ")")
        }
    }
}

/// Products render with positive-exponent factors in the numerator and
/// negated negative-exponent factors after a `/`, e.g. `3*q^2/p`.
fn write_product(f: &mut fmt::Formatter<'_>, e: &Expr, prec: u8) -> fmt::Result {
    let factors: Vec<Expr> = match e.kind() {
        ExprKind::Prod(cs) => cs.clone(),
        _ => vec![e.clone()],
    };
    let mut coeff = Rat::one();
    let mut num: Vec<(Expr, Rat)> = Vec::new();
    let mut den: Vec<(Expr, Rat)> = Vec::new();
    for c in &factors {
        match c.kind() {
            ExprKind::Num(r) => coeff *= r,
            _ => {
                let (b, ex) = c.base_exp();
                if ex.is_negative() {
                    den.push((b, -ex));
                } else {
                    num.push((b, ex));
                }
            }
        }
    }
    let negative = coeff.is_negative();
    if negative {
        coeff = -coeff;
    }
    let needs_paren = prec > 1 || (negative && prec > 0);
    if needs_paren {
        write!(f, "(")?;
    }
    if negative {
        write!(f, "-")?;
    }
    let coeff_num = Rat::from_integer(coeff.numer().clone());
    let coeff_den = Rat::from_integer(coeff.denom().clone());
    let mut wrote = false;
    if !coeff_num.is_one() || num.is_empty() {
        write_rat(f, &coeff_num)?;
        wrote = true;
    }
    for (b, ex) in &num {
        if wrote {
            write!(f, "*")?;
        }
        write_factor(f, b, ex)?;
        wrote = true;
    }
    if !coeff_den.is_one() || !den.is_empty() {
        write!(f, "/")?;
        let den_items = den.len() + usize::from(!coeff_den.is_one());
        if den_items > 1 {
            write!(f, "(")?;
        }
        let mut wrote_den = false;
        if !coeff_den.is_one() {
            write_rat(f, &coeff_den)?;
            wrote_den = true;
        }
        for (b, ex) in &den {
            if wrote_den {
                write!(f, "*")?;
            }
            write_factor(f, b, ex)?;
            wrote_den = true;
        }
        if den_items > 1 {
            write!(f, ")")?;
        }
    }
    if needs_paren {
        write!(f, ")")?;
    }
    Ok(())
}
