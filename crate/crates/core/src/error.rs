use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("interface mismatch: {0}")]
    Interface(String),
    #[error("invalid algebra: {0}")]
    Algebra(String),
    #[error("unknown name: {0}")]
    Unknown(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid diagram: {0}")]
    Diagram(String),
    #[error("invalid form: {0}")]
    Form(String),
    #[error("size limit exceeded: {0}")]
    TooLarge(String),
    #[error("singular matrix: {0}")]
    Singular(String),
}

pub type Result<T> = std::result::Result<T, Error>;
