use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("point index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operation needs dimension {expected}, configuration has {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("need at least {needed} points, found {found}")]
    TooFewPoints { needed: usize, found: usize },
    #[error("points are not in convex position")]
    NotConvexPosition,
    #[error("invalid arguments: {0}")]
    InvalidArguments(String),
    #[error("partitions have different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("closed form requires r <= n/2 (n={n}, r={r})")]
    HypothesisViolated { n: usize, r: usize },
    #[error("partition does not match configuration: {0}")]
    PartitionMismatch(String),
    #[error("partition {0} is not a Tverberg partition")]
    NotTverberg(String),
    #[error("partition {0} is not a Radon partition")]
    NotRadon(String),
    #[error("enumeration needs {count} partitions, cap is {cap}")]
    TooManyPartitions { count: String, cap: u64 },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
    #[error("no path found between the given partitions")]
    NoPathFound,
    #[error("could not produce a non-degenerate configuration after {0} attempts")]
    DegenerateAfterRetries(usize),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
