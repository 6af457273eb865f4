//! Error types for parsing and evaluation.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    /// Malformed input with byte position and description.
    Syntax { pos: usize, msg: String },
    /// An identifier applied like a function that is not `exp` or `ln`.
    UnknownFunction { pos: usize, name: String },
    /// Numeric literal outside the exact rational class (e.g. `1.5`).
    NonRationalLiteral { pos: usize },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { pos, msg } => write!(f, "syntax error at byte {pos}: {msg}"),
            ParseError::UnknownFunction { pos, name } => {
                write!(f, "unknown function `{name}` at byte {pos}")
            }
            ParseError::NonRationalLiteral { pos } => {
                write!(f, "non-rational numeric literal at byte {pos}")
            }
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    /// A free symbol had no value bound in the assignment.
    UnboundSymbol(String),
    /// Division by zero at the evaluation point.
    DivisionByZero,
    /// `ln` of a non-positive value.
    LnNonPositive,
    /// Fractional power of a non-positive base.
    FracPowNonPositive,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::UnboundSymbol(s) => write!(f, "unbound symbol `{s}`"),
            EvalError::DivisionByZero => write!(f, "division by zero at evaluation point"),
            EvalError::LnNonPositive => write!(f, "ln of a non-positive value"),
            EvalError::FracPowNonPositive => {
                write!(f, "fractional power of a non-positive base")
            }
        }
    }
}

impl std::error::Error for EvalError {}
