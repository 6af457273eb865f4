//! Error type shared across the library.

use std::fmt;

use symex::{EvalError, ParseError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OdeError {
    Parse(ParseError),
    /// The right-hand side mentions symbols outside x,y,p,q and the
    /// declared parameters.
    BadOde(String),
    /// The ODE violates a class precondition of the theorems
    /// (an identically vanishing f_{4,4} or f_{4,4,4}).
    OutsideClass(String),
    /// A transform fails the nondegeneracy requirements.
    DegenerateTransform(String),
    /// A transform component has no symbolic inverse and none was given.
    NotInvertible(String),
    /// The sampling budget ran out before enough valid points were found.
    SamplingExhausted(String),
    Eval(EvalError),
    /// Embedded operator data failed to load or verify.
    DataFile(String),
    /// A pilot invariant could not be solved for its auxiliary symbol.
    DegeneratePilot(String),
}

impl fmt::Display for OdeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OdeError::Parse(e) => write!(f, "{e}"),
            OdeError::BadOde(msg) => write!(f, "invalid ODE: {msg}"),
            OdeError::OutsideClass(msg) => write!(f, "outside the theorem class: {msg}"),
            OdeError::DegenerateTransform(msg) => write!(f, "degenerate transform: {msg}"),
            OdeError::NotInvertible(msg) => write!(f, "not symbolically invertible: {msg}"),
            OdeError::SamplingExhausted(msg) => write!(f, "sampling budget exhausted: {msg}"),
            OdeError::Eval(e) => write!(f, "{e}"),
            OdeError::DataFile(msg) => write!(f, "operator data file: {msg}"),
            OdeError::DegeneratePilot(msg) => write!(f, "degenerate pilot invariant: {msg}"),
        }
    }
}

impl std::error::Error for OdeError {}

impl From<ParseError> for OdeError {
    fn from(e: ParseError) -> Self {
        OdeError::Parse(e)
    }
}

impl From<EvalError> for OdeError {
    fn from(e: EvalError) -> Self {
        OdeError::Eval(e)
    }
}
