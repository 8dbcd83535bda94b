use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not expanding: smallest eigenvalue modulus {min_modulus:.12} <= 1 + margin")]
    NotExpanding { min_modulus: f64 },
    #[error("level {level} exceeds the representable range (|n| <= {max})")]
    LevelOverflow { level: i32, max: i32 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("signal support {support:?} is not contained in the box {bounds:?}")]
    SupportClipped { support: Vec<(f64, f64)>, bounds: Vec<(f64, f64)> },
    #[error("domain mismatch: expected {expected}, got {got}")]
    DomainMismatch { expected: &'static str, got: &'static str },
    #[error("incompatible grids: {0}")]
    IncompatibleGrids(String),
    #[error("torus grid mismatch: {0}")]
    GridMismatch(String),
    #[error("window {given} is smaller than the support-determined radius {needed}")]
    WindowTooSmall { given: i64, needed: i64 },
    #[error("periodization tail {tail:.3e} exceeds tolerance {tol:.3e}")]
    TailTooLarge { tail: f64, tol: f64 },
    #[error("expected {expected} wavelets for index m, got {got}")]
    WrongWaveletCount { expected: usize, got: usize },
    #[error("filter is not normalised: l2 norm {norm:.15}")]
    NotNormalized { norm: f64 },
    #[error("cascade diverged after {iters} iterations (step norm grew three times in a row)")]
    Divergence { iters: usize, step_norms: Vec<f64> },
    #[error("level range too small: outermost-level energy {energy:.3e} exceeds {tol:.3e}")]
    RangeTooSmall { energy: f64, tol: f64 },
    #[error("unknown built-in {0:?}")]
    UnknownName(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Numeric failures (as opposed to validation failures) map to a different
    /// process exit code in the command-line front end.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::TailTooLarge { .. } | Error::Divergence { .. } | Error::RangeTooSmall { .. }
        )
    }
}
