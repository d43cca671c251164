use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid action: {axiom}")]
    InvalidAction { axiom: String },

    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("subgroup is not normal: {0}")]
    NotNormal(String),

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown element `{name}` in {group}")]
    UnknownElement { name: String, group: String },

    #[error("empty subset")]
    EmptySubset,

    #[error("{what} exceeds the supported limit of {limit}")]
    Capability { what: String, limit: usize },

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("group carries no retraction; build it with semidirect_product")]
    MissingRetraction,

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("i/o error: {0}")]
    Io(String),
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
