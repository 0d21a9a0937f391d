use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// The function has a pole at the requested point.
    #[error("pole of order {order} at s = {location}")]
    PoleAt { location: f64, order: i32 },

    /// log-gamma was asked for a value at a non-positive integer.
    #[error("log-gamma pole at z = -{index}")]
    GammaPole { index: u64 },

    /// A lower hypergeometric parameter is a non-positive integer, so the
    /// series terms divide by zero.
    #[error("lower series parameter {value} is a non-positive integer")]
    LowerParameterPole { value: f64 },

    /// A series failed to reach the termination criterion.
    #[error("series did not converge after {terms} terms (last term {last_term:e})")]
    SeriesDidNotConverge { terms: usize, last_term: f64 },

    /// Adaptive quadrature could not meet its tolerance.
    #[error("quadrature failed: {0}")]
    Quadrature(String),

    /// A representation failed structural validation.
    #[error("invalid representation: {0}")]
    InvalidRep(String),

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The representation falls outside the regime the operation supports.
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),

    /// An exponential tilt was requested at a point outside the open
    /// convergence strip.
    #[error("tilt point {point} lies outside the strip ({lo}, {hi})")]
    TiltOutsideStrip { point: f64, lo: f64, hi: f64 },

    /// No catalog entry with the given name.
    #[error("unknown catalog name: {0}")]
    UnknownCatalogName(String),

    /// Malformed JSON or a JSON value that does not match the schema.
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
