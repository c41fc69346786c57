use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("self dependency on `{0}`")]
    SelfDependency(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("assignment does not cover node `{0}`")]
    IncompleteAssignment(String),
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("training error: {0}")]
    Train(String),
    #[error("model format error: {0}")]
    ModelFormat(String),
    #[error("node sets differ: {0}")]
    DomainMismatch(String),
    #[error("confusion matrix is empty")]
    EmptyMatrix,
    #[error("invalid synthetic spec: {0}")]
    Spec(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}
