use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("not left-invertible: {0}")]
    NotLeftInvertible(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("unital amalgamation requested on non-unital input")]
    NotUnital,
    #[error("empty universe")]
    EmptyUniverse,
    #[error("capacity violated at level {level}, row {row}")]
    Capacity { level: usize, row: usize },
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        // validation failures raised while building a value carry no position
        if e.line() == 0 {
            return Error::Malformed(e.to_string());
        }
        Error::Parse {
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
