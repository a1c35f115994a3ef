use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A required piece of configuration is missing or inconsistent.
    #[error("configuration error: {0}")]
    Config(String),

    /// A size guard was exceeded.
    #[error("resource limit exceeded: {requested} samples requested, limit is {limit}")]
    Resource { requested: u128, limit: u128 },

    /// The adaptive integrator could not make progress.
    #[error("integration failed at t = {t:e} s after {steps} steps: {reason} (last step {step:e} s)")]
    Integration {
        t: f64,
        step: f64,
        steps: usize,
        reason: String,
    },

    /// Caller misuse, e.g. misaligned grids.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

/// Rejects NaN and infinities with a named domain error.
pub(crate) fn ensure_finite(name: &str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::domain(format!("{name} must be finite, got {value}")))
    }
}

pub(crate) fn ensure_non_negative(name: &str, value: f64) -> Result<f64> {
    ensure_finite(name, value)?;
    if value < 0.0 {
        return Err(Error::domain(format!("{name} must be non-negative, got {value}")));
    }
    Ok(value)
}

pub(crate) fn ensure_positive(name: &str, value: f64) -> Result<f64> {
    ensure_finite(name, value)?;
    if value <= 0.0 {
        return Err(Error::domain(format!("{name} must be positive, got {value}")));
    }
    Ok(value)
}
