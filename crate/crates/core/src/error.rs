use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the domain of the function (pole, divergence, bad range).
    Domain(String),
    /// Request outside what this implementation supports.
    Unsupported(String),
    /// Request would exceed a resource guard (e.g. factorial enumeration).
    Resource(String),
    /// A quadratic `q` whose reciprocal sum is not 1; carries the computed `u₀`.
    NotNormalized { u0: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Unsupported(m) => write!(f, "unsupported: {m}"),
            Error::Resource(m) => write!(f, "resource limit: {m}"),
            Error::NotNormalized { u0 } => {
                write!(f, "quadratic is not normalized: sum of 1/q(n) = {u0}")
            }
        }
    }
}

impl core::error::Error for Error {}
