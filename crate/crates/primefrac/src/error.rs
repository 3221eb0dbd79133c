//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid prime family: {0}")]
    InvalidFamily(String),

    #[error("reference value precision insufficient: need at least {needed_digits} certified digits")]
    InsufficientPrecision { needed_digits: usize },

    #[error("constant {constant} is only computable to {achievable} digits at the configured cutoff")]
    AchievableDigits { constant: String, achievable: usize },

    #[error("resource limit reached for {family} after {completed} quotients")]
    ResourceLimit { family: String, completed: usize },

    #[error("unsupported Bessel order {0}")]
    UnsupportedOrder(String),

    #[error("cache file is corrupt: {0}")]
    CorruptCache(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("{0}")]
    Cli(String),
}

impl Error {
    /// Machine-readable form emitted on the error stream by the CLI.
    pub fn to_json(&self) -> String {
        let kind = match self {
            Error::ZeroDenominator => "zero-denominator",
            Error::Parse { .. } => "parse",
            Error::Domain(_) => "domain",
            Error::InvalidFamily(_) => "invalid-family",
            Error::InsufficientPrecision { .. } => "insufficient-precision",
            Error::AchievableDigits { .. } => "achievable-digits",
            Error::ResourceLimit { .. } => "resource-limit",
            Error::UnsupportedOrder(_) => "unsupported-order",
            Error::CorruptCache(_) => "corrupt-cache",
            Error::Io(_) => "io",
            Error::Cli(_) => "cli",
        };
        format!(
            "{{\"error\":{{\"kind\":\"{}\",\"message\":{}}}}}",
            kind,
            serde_json::to_string(&self.to_string()).unwrap_or_else(|_| "\"\"".into())
        )
    }
}
