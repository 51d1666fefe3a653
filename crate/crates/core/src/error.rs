use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("range error: {0}")]
    Range(String),

    #[error("pole at {location}: {what}")]
    Pole { what: String, location: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// CLI exit code associated with this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invalid(_) | Error::Contract(_) | Error::Domain(_) | Error::Io(_) => 2,
            _ => 3,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Error::Range(_) => "range",
            Error::Pole { .. } => "pole",
            Error::Domain(_) => "domain",
            Error::Contract(_) => "contract",
            Error::Numeric(_) => "numeric",
            Error::Invalid(_) => "invalid",
            Error::Io(_) => "io",
        }
    }
}
