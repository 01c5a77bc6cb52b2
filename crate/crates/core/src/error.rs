use thiserror::Error;

use crate::point::LatticePoint;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported dimension {0}; expected 1, 2 or 3")]
    UnsupportedDimension(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("coordinate {0} exceeds the supported magnitude 2^31")]
    CoordinateOverflow(i128),

    #[error("arithmetic overflow in {0}")]
    ArithmeticOverflow(&'static str),

    #[error("duplicate point {0}")]
    DuplicatePoint(LatticePoint),

    #[error("point configuration is empty")]
    Empty,

    #[error("{0} is not a vertex of the configuration")]
    NotAVertex(LatticePoint),

    #[error("matrix determinant is {0}, expected +1 or -1")]
    NotUnimodular(i128),

    #[error("configuration is not lattice-convex")]
    NotLatticeConvex,

    #[error("{what} exceeds budget: {needed} > {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed configuration JSON at `{path}`: {message}")]
    Json { path: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
