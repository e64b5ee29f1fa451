use thiserror::Error;

use crate::design::Point;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degenerate triple ({0}, {1}, {2}): points must be pairwise distinct")]
    DegenerateTriple(Point, Point, Point),

    /// Structural problem that prevents a design from being built at all
    /// (point out of range, unsupported order). A well-formed design that
    /// fails pair coverage is reported by the validators instead.
    #[error("malformed design: {0}")]
    MalformedDesign(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("no twofold triple system of order {0}: requires v = 0 or 1 (mod 3) and 3 <= v <= 10")]
    InvalidOrder(usize),

    #[error("window length {ell} out of range for order {v}: need 2 <= ell <= v")]
    WindowOutOfRange { ell: usize, v: usize },

    #[error("sequencing is not a permutation of the {0} points of the design")]
    PointSetMismatch(usize),

    #[error("cannot compare designs: {0}")]
    Mismatch(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),

    #[error("unknown label {0:?}")]
    UnknownLabel(String),

    #[error("invalid design: {0}")]
    Invalid(String),
}
