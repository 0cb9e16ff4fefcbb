use thiserror::Error;

/// Errors raised by distribution construction, measures, and the oracles.
#[derive(Debug, Error)]
pub enum Error {
    #[error("negative weight {value} for outcome `{label}`")]
    NegativeWeight { label: String, value: f64 },

    #[error("all weights are zero")]
    AllZero,

    #[error("{labels} labels but {weights} weights")]
    LengthMismatch { labels: usize, weights: usize },

    #[error("non-finite weight for outcome `{label}`")]
    NonFiniteInput { label: String },

    #[error("duplicate outcome label `{0}`")]
    DuplicateLabel(String),

    #[error("smoothing epsilon must be positive, got {0}")]
    NonPositiveEpsilon(f64),

    #[error("probability {0} is outside [0, 1]")]
    Domain(f64),

    #[error(
        "inconsistent DLITE term at ({p}, {q}): g - delta = {lit_minus_discount:e}, direct = {direct:e}"
    )]
    Inconsistent {
        p: f64,
        q: f64,
        lit_minus_discount: f64,
        direct: f64,
    },

    #[error(
        "KL divergence undefined: outcome `{outcome}` has mass on the left but none on the right"
    )]
    KlUndefined { outcome: String },

    #[error("no distributions given")]
    Empty,

    #[error("quadrature on [{a}, {b}] did not converge: error estimate {estimate:e} after {panels} panels")]
    QuadratureNonConvergence {
        a: f64,
        b: f64,
        panels: usize,
        estimate: f64,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("row {row}, column `{column}`: {message}")]
    Parse {
        row: usize,
        column: String,
        message: String,
    },

    #[error("row {row} (`{name}`): {source}")]
    Record {
        row: usize,
        name: String,
        #[source]
        source: Box<Error>,
    },

    #[error("distribution name `{0}` appears more than once")]
    DuplicateName(String),

    #[error("unknown format `{0}` (expected csv or json)")]
    UnknownFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
