use thiserror::Error;

/// Crate-wide error type. Variants partition into the three failure
/// classes surfaced by the CLI: bad input, a scale cap being exceeded,
/// and a model/contract violation discovered during computation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("missing weight for label `{0}`")]
    MissingWeight(String),

    #[error("cap exceeded: {what} is {actual}, cap is {cap}")]
    CapExceeded {
        what: String,
        cap: usize,
        actual: usize,
    },

    #[error("model violation: {0}")]
    ModelViolation(String),

    #[error("contract violation: {0}")]
    ContractViolation(String),
}

impl Error {
    pub fn cap(what: impl Into<String>, cap: usize, actual: usize) -> Self {
        Error::CapExceeded {
            what: what.into(),
            cap,
            actual,
        }
    }

    /// Prefix the error message with extra context, keeping the variant
    /// (and therefore the failure class) intact.
    pub fn with_context(self, ctx: &str) -> Self {
        match self {
            Error::InvalidInput(m) => Error::InvalidInput(format!("{ctx}: {m}")),
            Error::UnknownElement(m) => Error::UnknownElement(format!("{ctx}: {m}")),
            Error::UnknownLabel(m) => Error::UnknownLabel(format!("{ctx}: {m}")),
            Error::MissingWeight(m) => Error::MissingWeight(format!("{ctx}: {m}")),
            Error::CapExceeded { what, cap, actual } => Error::CapExceeded {
                what: format!("{ctx}: {what}"),
                cap,
                actual,
            },
            Error::ModelViolation(m) => Error::ModelViolation(format!("{ctx}: {m}")),
            Error::ContractViolation(m) => Error::ContractViolation(format!("{ctx}: {m}")),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
