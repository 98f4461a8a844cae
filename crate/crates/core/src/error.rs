use thiserror::Error;

/// Errors raised by the dispersion and FEM routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("Mach number {0} outside [0, 1)")]
    InvalidMach(f64),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("probe outside relation's validity: {0}")]
    ProbeOutOfRange(String),

    #[error("evanescent/invalid probe: no positive real root (a={a:e}, b={b:e}, c={c:e})")]
    NoPositiveRoot { a: f64, b: f64, c: f64 },

    #[error("expansion assumption violated: {0}")]
    NonConvergentLadder(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("singular system: pivot {pivot:e} at column {column}")]
    Singular { column: usize, pivot: f64 },

    #[error("non-square domain [{x0}, {x1}] x [{y0}, {y1}]")]
    NonSquareDomain { x0: f64, y0: f64, x1: f64, y1: f64 },

    #[error("entry ({row}, {col}) outside the band")]
    OutsideBand { row: usize, col: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
