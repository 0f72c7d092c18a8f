use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid interval [{lo}, {hi}]: lo must not exceed hi")]
    InvalidInterval { lo: i64, hi: i64 },
    #[error("invalid disk ({cx}, {cy}) r={r}")]
    InvalidDisk { cx: f64, cy: f64, r: f64 },
    #[error("invalid real rectangle")]
    InvalidRealRect,
    #[error("expected a horizontal and a vertical segment")]
    OrientationMismatch,
    #[error("aspect ratio {ratio} exceeds alpha {alpha}")]
    AspectRatio { ratio: f64, alpha: f64 },
    #[error("alpha must be finite and at least 1, got {0}")]
    InvalidAlpha(f64),
    #[error("disks {0} and {1} are tangent or concentric within tolerance")]
    Degenerate(usize, usize),
    #[error("instance kind mismatch: expected {expected}, found {found}")]
    KindMismatch { expected: String, found: String },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("malformed instance at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
