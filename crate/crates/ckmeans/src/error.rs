use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input must contain at least {required} points, got {got}")]
    EmptyInput { required: usize, got: usize },

    #[error("every feature is constant; crowding normalizers are all zero")]
    DegenerateFeature,

    #[error("k must satisfy 1 <= k <= n, got k={k} with n={n}")]
    BadK { k: usize, n: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("cluster {0} has no members")]
    EmptyCluster(usize),

    #[error("label vectors have different lengths: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("at least 2 points are required")]
    TooFewPoints,

    #[error("cluster count {k} is invalid for this metric on {n} points")]
    BadClusterCount { k: usize, n: usize },

    #[error("clusters {a} and {b} have identical centroids; the index is undefined")]
    IdenticalCentroids { a: usize, b: usize },

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("invalid specification: {0}")]
    BadSpec(String),

    #[error("cell {cell} could not be parsed as a finite number (row {row})")]
    Parse { row: usize, cell: usize },

    #[error("row {row} has {got} fields, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        got: usize,
    },

    #[error("file contains no data rows")]
    EmptyFile,

    #[error("unknown initialization method `{0}`")]
    UnknownMethod(String),

    #[error("unknown metric `{0}` (expected one of IS, RI, MI, SI, DB, CH)")]
    UnknownMetric(String),

    #[error("no value for dataset `{dataset}`, method `{method}` on metric {metric}")]
    MissingCell {
        dataset: String,
        method: String,
        metric: String,
    },

    #[error("ranking requires at least 2 methods, got {0}")]
    TooFewMethods(usize),

    #[error("ranking requires at least 2 datasets, got {0}")]
    TooFewDatasets(usize),

    #[error("manifest error: {0}")]
    Manifest(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Short variant name used to mark failed cells in benchmark tables.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptyInput { .. } => "EmptyInput",
            Error::DegenerateFeature => "DegenerateFeature",
            Error::BadK { .. } => "BadK",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::EmptyCluster(_) => "EmptyCluster",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::TooFewPoints => "TooFewPoints",
            Error::BadClusterCount { .. } => "BadClusterCount",
            Error::IdenticalCentroids { .. } => "IdenticalCentroids",
            Error::InvalidDataset(_) => "InvalidDataset",
            Error::BadSpec(_) => "BadSpec",
            Error::Parse { .. } => "ParseError",
            Error::RaggedRows { .. } => "RaggedRows",
            Error::EmptyFile => "EmptyFile",
            Error::UnknownMethod(_) => "UnknownMethod",
            Error::UnknownMetric(_) => "UnknownMetric",
            Error::MissingCell { .. } => "MissingCell",
            Error::TooFewMethods(_) => "TooFewMethods",
            Error::TooFewDatasets(_) => "TooFewDatasets",
            Error::Manifest(_) => "Manifest",
            Error::Io(_) => "IoError",
            Error::Csv(_) => "CsvError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
