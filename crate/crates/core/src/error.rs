use thiserror::Error;

/// Errors produced across the toolkit.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("zero vector where a nonzero representative is required")]
    ZeroVector,
    #[error("linearly dependent inputs")]
    DependentInputs,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("odd ambient dimension {0}: the naive hull does not exist; use the reduced-hull operations")]
    OddDimension(usize),
    #[error("region not in the supported obstacle class: {0}")]
    UnsupportedRegion(String),
    #[error("singular evaluation: {0}")]
    Singular(String),
    #[error("pole within the safety margin of the contour (min |denominator| = {0:.3e})")]
    PoleNearContour(f64),
    #[error("pole of order {0} unsupported by the residue oracle")]
    UnsupportedPoleOrder(usize),
    #[error("pole on the contour (distance {0:.3e})")]
    PoleOnContour(f64),
    #[error("branch point hit: |radicand| = {0:.3e} on the continuation path")]
    BranchPointHit(f64),
    #[error("root ambiguity on continuation step {step}: increase the step count")]
    AmbiguousStep { step: usize },
    #[error("matrix is not in the group: orthogonality residual {0:.3e}")]
    NotInGroup(f64),
    #[error("matrix is not a rotation")]
    NotARotation,
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
    #[error("evaluation failed: {0}")]
    Evaluation(String),
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
