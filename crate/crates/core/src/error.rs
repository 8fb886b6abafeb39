use std::path::PathBuf;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by the odometry library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Malformed input data (pose files, scans, calibration, rasters).
    #[error("format error{}: {msg}", context(.path, .line))]
    Format {
        path: Option<PathBuf>,
        line: Option<usize>,
        msg: String,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("{0}")]
    Eval(String),
}

fn context(path: &Option<PathBuf>, line: &Option<usize>) -> String {
    match (path, line) {
        (Some(p), Some(l)) => format!(" in {} line {}", p.display(), l),
        (Some(p), None) => format!(" in {}", p.display()),
        (None, Some(l)) => format!(" at line {}", l),
        (None, None) => String::new(),
    }
}

impl Error {
    pub fn format(msg: impl Into<String>) -> Self {
        Error::Format {
            path: None,
            line: None,
            msg: msg.into(),
        }
    }

    pub fn format_at(path: impl Into<PathBuf>, line: usize, msg: impl Into<String>) -> Self {
        Error::Format {
            path: Some(path.into()),
            line: Some(line),
            msg: msg.into(),
        }
    }

    pub fn format_in(path: impl Into<PathBuf>, msg: impl Into<String>) -> Self {
        Error::Format {
            path: Some(path.into()),
            line: None,
            msg: msg.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
