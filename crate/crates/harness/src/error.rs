use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed input at line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("unknown class token {token:?} at line {line}")]
    UnknownClassToken { line: usize, token: String },
    #[error("line {line} has {got} values, expected {expected}")]
    RowArity {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("invalid plan: {0}")]
    BadPlan(String),
    #[error("class {class:?} would get an empty {side} split")]
    EmptySplit { class: String, side: &'static str },
    #[error("k = {k} exceeds the smallest class size ({class:?} has {size} rows)")]
    KTooLarge {
        k: usize,
        class: String,
        size: usize,
    },
    #[error("frame labels must be a proper subset of the dataset classes")]
    FrameNotProperSubset,
    #[error("frame label {0:?} does not occur in the dataset")]
    UnknownFrameLabel(String),
    #[error("accuracy {0} outside [0, 1]")]
    AccuracyOutOfRange(f64),
    #[error(transparent)]
    Core(#[from] gbpa_core::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
