use thiserror::Error;

use crate::sequences::LatticeIndex;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("phi profile undefined at t = {t}: {reason}")]
    PhiUndefined { t: f64, reason: String },

    #[error("degenerate input: gamma at index {0} is zero")]
    ZeroGamma(LatticeIndex),

    #[error("empty sequence")]
    EmptySequence,

    #[error("index {0} not present in sequence")]
    MissingIndex(LatticeIndex),

    #[error("separation unachievable after retries: first offending pair {0} / {1}")]
    SeparationUnachievable(LatticeIndex, LatticeIndex),

    #[error("insufficient radius: stored radius {stored}, required at least {required}")]
    InsufficientRadius { stored: f64, required: f64 },

    #[error("degenerate point z = {re}+{im}i: distance {distance:e} below guard")]
    DegeneratePoint { re: f64, im: f64, distance: f64 },

    #[error("non-finite integrand at z = {re}+{im}i")]
    NonFiniteNode { re: f64, im: f64 },

    #[error("quadrature window too small: endpoint magnitude {endpoint:e} exceeds tolerance {tol:e}")]
    WindowTooSmall { endpoint: f64, tol: f64 },

    #[error("degree {0} out of range (0..=170)")]
    DegreeOutOfRange(usize),

    #[error("no convergence after {sweeps} sweeps, residual {residual:e}")]
    NonConvergence { sweeps: usize, residual: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("io: {0}")]
    Io(String),

    #[error("parse: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        if e.is_io() {
            return Error::Io(e.to_string());
        }
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
