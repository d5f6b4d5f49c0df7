use thiserror::Error;

/// Errors raised by the numerical, simulation and estimation routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("unsupported parameter region: {0}")]
    Unsupported(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("singular design: all regressor values are equal")]
    SingularDesign,

    #[error("degenerate slope: the fitted slope is zero")]
    DegenerateSlope,

    #[error("invalid input: {0}")]
    Input(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors caused by the caller's arguments rather than by the computation.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::Input(_) | Error::Unsupported(_) | Error::InsufficientData(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
