use thiserror::Error;

/// Error conditions reported by the evaluators, zero scanner and root finders.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("series did not converge within {max_terms} terms")]
    NonConvergence { max_terms: usize },
    #[error("scan exhausted: found {found} zeros before reaching the upper bound {bound}")]
    ScanExhausted { found: usize, bound: f64 },
    #[error("evaluation too close to a critical point: |{what}| below threshold at {at}")]
    NearCriticalPoint { what: &'static str, at: f64 },
    #[error("root bracket invalid: no sign change on [{lo}, {hi}]")]
    NonBracketing { lo: f64, hi: f64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
