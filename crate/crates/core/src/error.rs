use thiserror::Error;

use crate::formula::VarId;

/// Syntax error raised by the formula parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar,
    UnexpectedToken,
    UnexpectedEnd,
    ZeroVariable,
    MixedJoinMeet,
    TrailingInput,
}

impl ParseError {
    pub(crate) fn new(offset: usize, kind: ParseErrorKind, message: impl Into<String>) -> Self {
        Self {
            offset,
            kind,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("variable {0} is not bound by the valuation")]
    UnboundVariable(VarId),

    #[error("repetition count must be at least 1")]
    ZeroRepetition,

    #[error("lifting parameter e must be at least 2, got {0}")]
    LiftParameter(u64),

    #[error("invalid rational literal {0:?}")]
    RationalLiteral(String),

    #[error("value {0} lies outside [0,1]")]
    OutOfUnitInterval(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("enumeration needs {needed} steps, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
