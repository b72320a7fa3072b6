use thiserror::Error;

/// Library-wide error type.
///
/// Exact computations either succeed or report a structured reason; no
/// operation silently truncates, rounds, or drops input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse {text:?} as a rational number: {reason}")]
    ParseRational { text: String, reason: &'static str },

    #[error("malformed point file at line {line}: {reason}")]
    ParsePointFile { line: usize, reason: String },

    #[error("duplicate point {point} (points must be pairwise distinct)")]
    DuplicatePoint { point: String },

    #[error("point index {index} out of range for a set of {n} points")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} has size {actual}, above the configured limit {limit}")]
    SizeLimit {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("time budget of {seconds:.3}s exceeded during {phase}")]
    TimeLimit { seconds: f64, phase: &'static str },

    #[error("lines are identical; the operation needs two distinct lines")]
    IdenticalLines,

    #[error("lines do not meet (no common projective point)")]
    NonMeetingLines,

    #[error("line has direction orthogonal to the chart axis (third coordinate is zero)")]
    HorizontalLine,

    #[error("distinct source pairs mapped to the same canonical line: {0}")]
    LineCollision(String),

    #[error("degenerate input series: {0}")]
    DegenerateSeries(String),

    #[error("inconsistent statistics: {0}")]
    CorruptStats(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
