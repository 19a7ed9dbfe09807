use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("y = {y} lies below the lower integration limit zeta = {zeta}")]
    OutsideDomain { y: f64, zeta: f64 },

    #[error(transparent)]
    Quadrature(#[from] QuadratureError),

    #[error("Matsubara sum did not converge within max_l = {max_l} terms")]
    Truncation { max_l: usize },

    #[error(
        "threshold {threshold} is not straddled on [{low_m:e}, {high_m:e}] m \
         (values {value_low:e}, {value_high:e})"
    )]
    NoStraddle {
        threshold: f64,
        low_m: f64,
        high_m: f64,
        value_low: f64,
        value_high: f64,
    },

    #[error("{}line {line}: {message}", path.as_ref().map(|p| format!("{}: ", p.display())).unwrap_or_default())]
    Table {
        path: Option<PathBuf>,
        line: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// True for failures of the numerical machinery (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Quadrature(_) | Error::Truncation { .. } | Error::NoStraddle { .. }
        )
    }

    pub fn is_file(&self) -> bool {
        matches!(self, Error::Table { .. } | Error::Io { .. })
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
#[error(
    "quadrature on [{lower}, {upper}] did not converge: estimate {value:e}, \
     error {error:e} > tolerance {tolerance:e} after {subdivisions} subdivisions"
)]
pub struct QuadratureError {
    pub lower: f64,
    pub upper: f64,
    pub value: f64,
    pub error: f64,
    pub tolerance: f64,
    pub subdivisions: usize,
}
