use thiserror::Error;

/// Failures reported by the numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("argument {value} outside domain [{lo}, {hi}]")]
    OutOfDomain { value: f64, lo: f64, hi: f64 },

    #[error("operation not defined for kernel kind `{0}`")]
    WrongKind(&'static str),

    /// Raised by symmetric factorizations; the pivot index is 0-based.
    #[error("operator not positive (pivot {pivot}) — determinant sign undefined")]
    NotPositive { pivot: usize },

    #[error("singular system (pivot {pivot})")]
    Singular { pivot: usize },

    #[error("integrand not decayed at truncation point {at}: |f| = {value:e}")]
    Truncation { at: f64, value: f64 },

    #[error("gamma pole at non-positive integer {0}")]
    Pole(f64),

    #[error("spectral point {0} lies on the cut")]
    OnCut(String),

    #[error("csv row {row}: {msg}")]
    Csv { row: usize, msg: String },

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// True for failures of a numerical contract (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NotPositive { .. } | Error::Singular { .. } | Error::Truncation { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
