use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("partition {0} is not {1}-bounded")]
    NotBounded(String, usize),
    #[error("duplicate tableau {0} in set")]
    Duplicate(String),
    #[error("arithmetic failure: {0}")]
    Arithmetic(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn arith(msg: impl Into<String>) -> Self {
        Error::Arithmetic(msg.into())
    }
}
