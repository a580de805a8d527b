use thiserror::Error;

use crate::trees::Address;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational function has a pole at m = {0}")]
    Pole(String),
    #[error("address {0} is not a vertex of the tree")]
    InvalidAddress(Address),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid branching oracle: {0}")]
    Oracle(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("negative growth probability: m = {m} but a vertex already has {children} children")]
    NegativeProbability { m: String, children: usize },
    #[error("invalid labeling: {0}")]
    InvalidLabeling(String),
    #[error("refusing: {what} is {size}, above the limit of {limit}")]
    TooLarge {
        what: &'static str,
        size: u128,
        limit: u128,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
