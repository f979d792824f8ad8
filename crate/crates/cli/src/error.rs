use std::io;
use std::path::PathBuf;

use olsc_mceliece::codec::CodecError;
use thiserror::Error;

use crate::framing::FramingError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("{path}: {source}")]
    Format {
        path: PathBuf,
        #[source]
        source: CodecError,
    },
    #[error("decode integrity failure: {0}")]
    Integrity(String),
    #[error(transparent)]
    Framing(#[from] FramingError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    /// 0 success, 1 I/O, 2 usage or parameters, 3 file format, 4 decode
    /// integrity.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Usage(_) | CliError::Parameter(_) => 2,
            CliError::Format { .. } => 3,
            CliError::Integrity(_) | CliError::Framing(_) => 4,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(io::Error) -> Self {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }

    pub(crate) fn format(path: impl Into<PathBuf>) -> impl FnOnce(CodecError) -> Self {
        let path = path.into();
        move |source| match source {
            CodecError::Io(source) => CliError::Io { path, source },
            source => CliError::Format { path, source },
        }
    }
}

impl From<olsc_mceliece::Error> for CliError {
    fn from(e: olsc_mceliece::Error) -> Self {
        match e {
            olsc_mceliece::Error::Parameter(msg) => CliError::Parameter(msg),
            other => CliError::Parameter(other.to_string()),
        }
    }
}
