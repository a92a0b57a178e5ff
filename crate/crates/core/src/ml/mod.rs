//! Supervised learning building blocks: datasets with stratified
//! splitting, logistic regression, CART decision trees, and evaluation
//! metrics. Trained models persist as versioned JSON.

use std::fmt;

pub mod dataset;
pub mod logreg;
pub mod metrics;
pub mod tree;

pub use dataset::Dataset;
pub use logreg::{logistic_gradient, logistic_loss, LogRegConfig, LogRegModel, Scaler};
pub use metrics::{evaluate, macro_f1, Metrics};
pub use tree::{Node, TreeConfig, TreeModel};

/// Version stamped into every persisted model file.
pub const SCHEMA_VERSION: u32 = 1;

/// Errors raised by dataset handling, training, evaluation, and model
/// persistence.
#[derive(Debug)]
pub enum MlError {
    ShapeMismatch { reason: String },
    EmptyInput,
    TooFewSamples { train: usize, test: usize },
    DegenerateData { reason: String },
    InvalidParam { reason: String },
    Io { path: String, error: std::io::Error },
    BadFormat { reason: String },
    SchemaVersion { found: u32, supported: u32 },
}

impl fmt::Display for MlError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ShapeMismatch { reason } => write!(f, "ShapeMismatch: {reason}"),
            Self::EmptyInput => write!(f, "EmptyInput: no samples"),
            Self::TooFewSamples { train, test } => {
                write!(f, "TooFewSamples: split leaves {train} train / {test} test rows")
            }
            Self::DegenerateData { reason } => write!(f, "DegenerateData: {reason}"),
            Self::InvalidParam { reason } => write!(f, "InvalidParam: {reason}"),
            Self::Io { path, error } => write!(f, "Io: {path}: {error}"),
            Self::BadFormat { reason } => write!(f, "BadFormat: {reason}"),
            Self::SchemaVersion { found, supported } => {
                write!(f, "SchemaVersion: file has version {found}, supported is {supported}")
            }
        }
    }
}

impl std::error::Error for MlError {}
