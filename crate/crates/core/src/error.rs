use thiserror::Error;

/// Errors raised by the engine. Messages are stable; the CLI and the
/// golden reports print them verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("semifield mismatch")]
    SemifieldMismatch,
    #[error("not in NP")]
    NotInNp,
    #[error("malformed exchange polynomial: {0}")]
    MalformedExchangePolynomial(String),
    #[error("non-monic exchange polynomial")]
    NonMonicExchangePolynomial,
    #[error("inversion of zero")]
    InversionOfZero,
    #[error("not block-symmetric")]
    NotBlockSymmetric,
    #[error("not in domain of ψ̂")]
    NotInPsiDomain,
    #[error("denominator in kernel")]
    DenominatorInKernel,
    #[error("not skew-symmetrizable")]
    NotSkewSymmetrizable,
    #[error("degree mismatch")]
    DegreeMismatch,
    #[error("index out of range: {0}")]
    IndexOutOfRange(usize),
    #[error("non-reduced word")]
    NonReducedWord,
    #[error("variable-table mismatch: {0}")]
    VariableTableMismatch(String),
    #[error("not a function of the block aggregates")]
    NotAggregateFunction,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown case {0}")]
    UnknownCase(String),
    #[error("unknown check '{name}'; valid checks: {valid}")]
    UnknownCheck { name: String, valid: String },
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
