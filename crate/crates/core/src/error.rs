use thiserror::Error;

/// Errors raised by the criteria, the curve models and the text grammars.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A named standing hypothesis of an operation does not hold for the input.
    #[error("hypothesis `{name}` violated: {detail}")]
    Hypothesis { name: &'static str, detail: String },

    /// Malformed rational or divisor text.
    #[error("parse error at position {position} in {input:?}: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },

    /// An operation received a value outside its domain.
    #[error("{0}")]
    Domain(String),

    /// A curve model that cannot host the requested query.
    #[error("unsupported curve model: {0}")]
    Model(String),

    /// A sweep was asked for a grid beyond its configured limits.
    #[error("resource limit: {0}")]
    Resource(String),
}

impl Error {
    pub(crate) fn hypothesis(name: &'static str, detail: impl Into<String>) -> Self {
        Error::Hypothesis {
            name,
            detail: detail.into(),
        }
    }

    pub(crate) fn parse(input: &str, position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            position,
            message: message.into(),
        }
    }

    /// Name of the violated hypothesis, if this is a hypothesis rejection.
    pub fn hypothesis_name(&self) -> Option<&'static str> {
        match self {
            Error::Hypothesis { name, .. } => Some(name),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
