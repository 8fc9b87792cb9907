//! Error type shared by all modules.

use std::fmt;

/// Errors raised by exact-arithmetic operations.
///
/// Every variant corresponds to a violated precondition; no operation in this
/// crate fails for numerical reasons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two objects that must live in the same ring or space do not.
    DimensionMismatch { expected: usize, found: usize, context: &'static str },
    /// An operation that requires a nonzero polynomial received zero.
    ZeroPolynomial(&'static str),
    /// An operation that requires at least two terms received fewer.
    TooFewTerms(&'static str),
    /// A square matrix expected to be invertible is singular.
    SingularMatrix,
    /// A matrix expected to be square is not.
    NotSquare { rows: usize, cols: usize },
    /// The degree vector is not orthogonal to a lattice basis vector.
    NotOrthogonal { vector: Vec<crate::Int> },
    /// A zero vector was supplied where a nonzero one is required.
    ZeroVector(&'static str),
    /// A reduced basis element is a monomial, so the ideal is not monomial-free.
    MonomialInBasis { element: String },
    /// A validity certificate was refuted; the payload describes the witness.
    Refuted(String),
    /// Positive integer expected (grading degrees).
    NonpositiveDegree { index: usize },
    /// Degrees are required but absent from the valuation table.
    MissingDegrees,
    /// A comparison or search exceeded the certified degree bound.
    DegreeBoundExceeded { bound: u32 },
    /// The requested map cannot be pinned down from the given data.
    Underdetermined(&'static str),
    /// Ambient dimension outside the supported range for exact hulls.
    UnsupportedDimension { dim: usize, max: usize },
    /// Generic invalid-input error with a human-readable reason.
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found, context } => {
                write!(f, "dimension mismatch in {context}: expected {expected}, found {found}")
            }
            Error::ZeroPolynomial(ctx) => write!(f, "zero polynomial not allowed in {ctx}"),
            Error::TooFewTerms(ctx) => write!(f, "at least two terms required in {ctx}"),
            Error::SingularMatrix => write!(f, "matrix is singular"),
            Error::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, expected square"),
            Error::NotOrthogonal { vector } => {
                write!(f, "degree vector is not orthogonal to lattice vector {vector:?}")
            }
            Error::ZeroVector(ctx) => write!(f, "zero vector not allowed in {ctx}"),
            Error::MonomialInBasis { element } => {
                write!(f, "basis element {element} is a monomial; a prime monomial-free ideal is required")
            }
            Error::Refuted(witness) => write!(f, "certificate refuted: {witness}"),
            Error::NonpositiveDegree { index } => {
                write!(f, "degree of generator {index} must be positive")
            }
            Error::MissingDegrees => write!(f, "valuation table carries no degrees"),
            Error::DegreeBoundExceeded { bound } => {
                write!(f, "comparison undecided within certified degree bound {bound}")
            }
            Error::Underdetermined(ctx) => write!(f, "underdetermined linear map in {ctx}"),
            Error::UnsupportedDimension { dim, max } => {
                write!(f, "ambient dimension {dim} unsupported (max {max})")
            }
            Error::Invalid(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
