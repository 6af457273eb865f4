//! Exact symbolic expression kernel.
//!
//! The expression class is deliberately small: rational functions over
//! exact rationals in a set of named symbols, extended by powers with
//! rational exponents and the functions `exp` and `ln`. That is enough to
//! represent third-order ODE right-hand sides like `q^3`, `A*x^3*q^4` or
//! `q^(3/2)` together with everything their derivative tables produce,
//! while keeping zero testing decidable on the rational core.
//!
//! Expressions are immutable, hash-consed trees ([`Expr`]). Heavy
//! canonicalization lives in a separate normal-form machine
//! ([`factored::Factored`]) that represents an expression as a rational
//! coefficient times a product of atom powers and expanded polynomial
//! factors, with trial-division cancellation between numerators and
//! denominators. [`simplify`] renders that form back into a canonical
//! tree; [`equals_zero`] decides zero-equality symbolically and falls
//! back to deterministic seeded sampling outside the rational class.

pub mod approx;
pub mod diff;
pub mod error;
pub mod eval;
pub mod expr;
pub mod factored;
pub mod normalize;
pub mod parse;
pub mod poly;
pub mod printer;
pub mod rat;
pub mod sample;
pub mod subst;
pub mod zero;

pub use diff::differentiate;
pub use error::{EvalError, ParseError};
pub use eval::{evaluate, Assignment, EvalCtx, NumValue};
pub use expr::{Expr, ExprKind};
pub use normalize::{simplify, simplify_with_domain};
pub use parse::parse;
pub use rat::Rat;
pub use sample::{collect_constraints, sample_points, Constraint, SampleCfg};
pub use subst::{substitute, substitute_pairs};
pub use zero::{equals_zero, equals_zero_witnessed, Trit, ZeroPolicy};
