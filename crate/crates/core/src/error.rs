//! Error types shared across the crate.

use thiserror::Error;

/// Why a mass function failed validation. Returned by
/// [`MassFunction::validate`](crate::MassFunction::validate) so callers can
/// report the exact invariant that broke.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MassViolation {
    #[error("masses sum to {sum}, expected 1 within tolerance")]
    SumNotOne { sum: f64 },
    #[error("mass {value} outside [0, 1]")]
    OutOfRange { value: f64 },
    #[error("empty set carries mass {value} in a closed-world frame")]
    EmptySetMassInClosedWorld { value: f64 },
    #[error("focal set {bits:#b} does not belong to a frame of {frame_size} labels")]
    ForeignFocalSet { bits: u32, frame_size: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("frame needs at least one label")]
    EmptyFrame,
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("frame has {0} labels, maximum is {max}", max = crate::frame::MAX_LABELS)]
    TooManyLabels(usize),
    #[error("label {0:?} is empty or contains ','")]
    BadLabel(String),
    #[error("label {0:?} not in frame")]
    UnknownLabel(String),
    #[error("focal set {bits:#b} does not belong to a frame of {frame_size} labels")]
    ForeignFocalSet { bits: u32, frame_size: usize },
    #[error("invalid mass function: {0}")]
    InvalidMass(#[from] MassViolation),
    #[error("mass functions are defined on different frames")]
    FrameMismatch,
    #[error("combination rule requires inputs with zero empty-set mass")]
    OpenWorldInput,
    #[error("total conflict (k = {k}), combination undefined")]
    TotalConflict { k: f64 },
    #[error("cannot combine an empty list of mass functions")]
    EmptyCombination,
    #[error("negation requires a Bayesian mass function (singleton focal elements only)")]
    NotBayesian,
    #[error("negation requires a frame with at least two labels")]
    FrameTooSmall,
    #[error("rule {rule:?} is incompatible with {world:?} world classification")]
    IncompatibleRule {
        rule: crate::combine::CombinationRule,
        world: crate::frame::WorldMode,
    },
    #[error("no samples provided")]
    EmptySamples,
    #[error("non-finite sample value")]
    NonFiniteSample,
    #[error("class {0:?} has no training samples")]
    MissingClassSamples(String),
    #[error("unknown attribute {0:?}")]
    UnknownAttribute(String),
    #[error("sample has {got} values, expected {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("cannot parse focal-set key {0:?}")]
    BadSetKey(String),
    #[error("cannot normalize: total mass is zero")]
    ZeroTotalMass,
    #[error("malformed document: {0}")]
    BadDocument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
