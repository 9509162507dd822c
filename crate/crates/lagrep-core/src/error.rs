use alloc::string::String;
use core::fmt;

use crate::laurent::LaurentPoly;

pub type Result<T> = core::result::Result<T, Error>;

/// Every failure the core can report. Variants carry enough context to be
/// printed as-is by a front end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An operation that needs a nonzero polynomial got 0.
    ZeroPolynomial,
    /// `exact_div` was asked to divide by something that does not divide.
    NotDivisible {
        num: LaurentPoly,
        den: LaurentPoly,
    },
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    NotSquare {
        rows: usize,
        cols: usize,
    },
    /// Square matrix whose determinant is not a unit of Λ.
    NotInvertible {
        det: LaurentPoly,
    },
    /// Generators are not independent over Q(Λ).
    RankDeficient {
        cols: usize,
        rank: usize,
    },
    /// The closure of a span could not be certified.
    Unsaturatable {
        minor_gcd: LaurentPoly,
    },
    /// Index or size argument out of its allowed range.
    OutOfRange {
        what: &'static str,
        value: usize,
        max: usize,
    },
    NotSkewHermitian,
    Degenerate,
    NotUnitary,
    NotIsotropic,
    NotClosed,
    /// A quotient or span has no free basis reachable by unit pivots.
    NoFreeBasis(&'static str),
    /// Composition across different middle objects.
    ModuleMismatch,
    /// Object construction failed.
    Construction(String),
    /// Word does not typecheck against its sign sequences.
    InvalidWord {
        index: usize,
        reason: String,
    },
    /// Computed rank disagrees with the expected rank.
    RankMismatch {
        expected: usize,
        found: usize,
    },
    /// A request outside what the implementation supports.
    Unsupported(String),
    /// Text input could not be parsed.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroPolynomial => write!(f, "zero polynomial where a nonzero one is required"),
            Error::NotDivisible { num, den } => write!(f, "{den} does not divide {num} in Z[t, t^-1]"),
            Error::DimensionMismatch { op, left, right } => {
                write!(f, "dimension mismatch in {op}: {}x{} vs {}x{}", left.0, left.1, right.0, right.1)
            }
            Error::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, expected square"),
            Error::NotInvertible { det } => write!(f, "matrix is not invertible over Z[t, t^-1] (det = {det})"),
            Error::RankDeficient { cols, rank } => {
                write!(f, "generators are dependent: {cols} columns but rank {rank}")
            }
            Error::Unsaturatable { minor_gcd } => write!(f, "could not certify saturation: maximal-minor gcd is {minor_gcd}"),
            Error::OutOfRange { what, value, max } => write!(f, "{what} = {value} out of range (max {max})"),
            Error::NotSkewHermitian => write!(f, "Gram matrix is not skew-hermitian"),
            Error::Degenerate => write!(f, "form is degenerate"),
            Error::NotUnitary => write!(f, "matrix does not preserve the forms"),
            Error::NotIsotropic => write!(f, "submodule is not isotropic"),
            Error::NotClosed => write!(f, "submodule is not closed"),
            Error::NoFreeBasis(what) => write!(f, "no free basis found for {what}"),
            Error::ModuleMismatch => write!(f, "relations do not share the middle module"),
            Error::Construction(msg) => write!(f, "object construction failed: {msg}"),
            Error::InvalidWord { index, reason } => write!(f, "token {index}: {reason}"),
            Error::RankMismatch { expected, found } => {
                write!(f, "rank mismatch: expected {expected}, found {found}")
            }
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
