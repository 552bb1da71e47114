use std::path::PathBuf;

use thiserror::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_GAP: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] thinbasis_core::Error),

    #[error("invalid argument: {0}")]
    Usage(String),

    #[error("enumeration up to {x} would list {count} elements, above the limit of {cap} (raise --max-elements)")]
    TooManyElements { x: String, count: String, cap: u64 },

    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot serialize output: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Core(thinbasis_core::Error::ResourceCap { .. }) | Self::TooManyElements { .. } => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
