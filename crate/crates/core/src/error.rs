use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Text input could not be parsed. Line and column are 1-based.
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("tile index {index} out of range for a set of {len} tiles")]
    TileIndex { index: usize, len: usize },

    #[error("color {color} out of range for a universe of {colors} colors")]
    ColorRange { color: u32, colors: u32 },

    #[error("duplicate tile {0}")]
    DuplicateTile(String),

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
