use thiserror::Error;

/// Errors shared by every layer of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    ContextMismatch,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field of order {0} is too large for table arithmetic")]
    FieldTooLarge(u64),
    #[error("modulus is not a monic irreducible polynomial of degree {0}")]
    BadModulus(u32),
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("series cannot be inverted: no known leading term")]
    CannotInvert,
    #[error("series may have negative valuation")]
    NotIntegral,
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("Hensel precondition v(g(y0)) > 2 v(g'(y0)) fails")]
    NotHenselReady,
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid polynomial f: {0}")]
    InvalidF(String),
    #[error("unit {u} is divisible by the characteristic {p}")]
    BadUnit { u: i64, p: u64 },
    #[error("formula has the wrong shape: {0}")]
    Shape(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        Error::Syntax {
            pos,
            msg: msg.into(),
        }
    }

    pub(crate) fn precision(msg: impl Into<String>) -> Self {
        Error::InsufficientPrecision(msg.into())
    }
}
