//! Error type shared by every module in the crate.

use std::fmt;
use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug)]
pub enum Error {
    /// Two tensors that must agree in shape do not; names both shapes.
    ShapeMismatch {
        op: &'static str,
        lhs: Vec<usize>,
        rhs: Vec<usize>,
    },
    /// A single shape is unusable for the requested operation.
    BadShape { op: &'static str, detail: String },
    /// Invalid pooling/grid/training configuration.
    BadConfig { detail: String },
    /// Classification label outside 0..n_classes.
    LabelOutOfRange { label: usize, n_classes: usize },
    /// A tensor that must be finite contains NaN or Inf.
    NonFinite { tensor: String },
    /// Binary dataset file is malformed; `offset` is the byte where parsing failed.
    IdxFormat {
        path: PathBuf,
        offset: u64,
        detail: String,
    },
    /// Malformed split manifest line.
    Manifest { line: usize, detail: String },
    /// Malformed or incompatible checkpoint.
    Checkpoint { detail: String },
    /// Evaluation was asked for on an empty sample set.
    EmptySampleSet,
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ShapeMismatch { op, lhs, rhs } => {
                write!(f, "{op}: shape mismatch {lhs:?} vs {rhs:?}")
            }
            Error::BadShape { op, detail } => write!(f, "{op}: {detail}"),
            Error::BadConfig { detail } => write!(f, "invalid configuration: {detail}"),
            Error::LabelOutOfRange { label, n_classes } => {
                write!(f, "label {label} out of range 0..{n_classes}")
            }
            Error::NonFinite { tensor } => write!(f, "non-finite value in tensor `{tensor}`"),
            Error::IdxFormat {
                path,
                offset,
                detail,
            } => write!(f, "{}: bad IDX data at byte {offset}: {detail}", path.display()),
            Error::Manifest { line, detail } => write!(f, "manifest line {line}: {detail}"),
            Error::Checkpoint { detail } => write!(f, "checkpoint: {detail}"),
            Error::EmptySampleSet => write!(f, "evaluation requires a non-empty sample set"),
            Error::Io { path, source } => write!(f, "{}: {source}", path.display()),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io { source, .. } => Some(source),
            _ => None,
        }
    }
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
