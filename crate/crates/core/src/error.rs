use num_bigint::{BigInt, BigUint};
use thiserror::Error;

/// Errors produced by the bubbling calculus.
///
/// Variants split into two families: malformed input (rejected values,
/// shape mismatches) and feasibility outcomes (`PeelFailed`,
/// `StrategyNotApplicable`, `UnsupportedTorsion`) which report that a
/// construction does not apply rather than that the input is broken.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("torsion coefficient {0} is smaller than 2")]
    TorsionCoefficient(BigUint),

    #[error("shift {shift} plus summand top degree {top} exceeds target top degree {n}")]
    ShiftOverflow { shift: usize, top: usize, n: usize },

    #[error("graded group needs at least the degree-0 entry")]
    EmptyGraded,

    #[error("graded length {len} does not match top degree {n} (expected {expected})", expected = n + 1)]
    GradedLength { n: usize, len: usize },

    #[error("degree mismatch: expected top degree {expected}, got {actual}")]
    DegreeMismatch { expected: usize, actual: usize },

    #[error("{rows}x{cols} matrix needs {expected} entries, got {len}", expected = rows * cols)]
    MatrixShape {
        rows: usize,
        cols: usize,
        len: usize,
    },

    #[error("matrix dimensions {0}x{1} and {2}x{3} cannot be multiplied")]
    MatrixProductShape(usize, usize, usize, usize),

    #[error("invalid chain complex: {0}")]
    InvalidComplex(String),

    #[error("invalid generating manifold: {0}")]
    InvalidManifold(String),

    #[error("target dimension must be positive")]
    ZeroTargetDimension,

    #[error("degree-0 homology of a Reeb model must be free of rank at least 1")]
    BadBaseModel,

    #[error(
        "generating manifold of dimension {dim} leaves no codimension inside target dimension {n}"
    )]
    NoCodimension { dim: usize, n: usize },

    #[error("operation {index} rejected: {source}")]
    OperationRejected {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("torsion at degree(s) {degrees:?} is outside the generating-manifold catalog")]
    UnsupportedTorsion { degrees: Vec<usize> },

    #[error("strategy `{strategy}` does not apply: {reason}")]
    StrategyNotApplicable {
        strategy: &'static str,
        reason: String,
    },

    #[error("peeling failed: residual rank at degree {degree} went negative in round {round}")]
    PeelFailed { degree: usize, round: usize },

    #[error("invalid function spec: {0}")]
    InvalidFunctionSpec(String),

    #[error("rank {0} does not fit a machine-size count")]
    RankOverflow(BigInt),

    #[error("search bounds exceeded: {0}")]
    BoundsExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
