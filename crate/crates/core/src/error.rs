use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate domain: [{a}, {b}] x [{c}, {d}]")]
    DegenerateDomain { a: f64, b: f64, c: f64, d: f64 },

    #[error("too few intervals along {axis}: {intervals} (need at least 3)")]
    TooFewIntervals { axis: char, intervals: usize },

    #[error("node index ({i}, {j}) out of range for a {m}x{n} grid")]
    IndexOutOfRange {
        i: usize,
        j: usize,
        m: usize,
        n: usize,
    },

    #[error("unsupported derivative order {0} (0, 1 or 2)")]
    DerivativeOrder(u8),

    #[error("basis needs at least 4 uniformly spaced nodes")]
    InvalidBasis,

    #[error("singular tridiagonal system: pivot {pivot:e} at row {row}")]
    SingularSystem { row: usize, pivot: f64 },

    #[error("dimension mismatch: expected {expected:?}, got {found:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("blow-up at stage {stage} near t = {time}")]
    BlowUp { stage: usize, time: f64 },

    #[error("invalid Reynolds number {0}")]
    InvalidReynolds(f64),

    #[error("initial and boundary data disagree by {gap:e} at ({x}, {y})")]
    IncompatibleData { x: f64, y: f64, gap: f64 },

    #[error("problem '{0}' has no exact solution")]
    MissingExact(String),

    #[error("non-positive error value {0:e} in rate computation")]
    NonPositiveError(f64),

    #[error("({x}, {y}) is not a node of the configured grid")]
    OffNode { x: f64, y: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BlowUp { .. } | Error::NonFinite(_) => 3,
            Error::Io(_) | Error::Csv(_) | Error::Json(_) => 4,
            _ => 2,
        }
    }
}
