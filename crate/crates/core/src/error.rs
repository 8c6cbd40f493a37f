use thiserror::Error;

/// Errors raised by the arithmetic, parsing and solver layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands or inputs outside the domain of an operation (mixed fields,
    /// wrong vector length, zero divisor polynomial, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// Inverse requested for a zero or zero-norm element.
    #[error("not invertible: {0}")]
    NotInvertible(String),
    /// A size bound (enumeration bound, degree cap) was exceeded.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// Malformed literal. `position` is a byte offset into the input.
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    /// An identity check whose preconditions do not hold for the input.
    #[error("inapplicable input: {0}")]
    Inapplicable(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn syntax(position: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            position,
            message: message.into(),
        }
    }
}
