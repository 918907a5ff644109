use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid root system: {0}")]
    InvalidRootSystem(String),

    #[error("orbit enumeration refused for rank {rank} (limit {limit})")]
    RankTooLarge { rank: usize, limit: usize },

    #[error("multiplicity table does not match the positive roots of {root_type}: {detail}")]
    MultiplicityTable { root_type: String, detail: String },

    #[error("unknown case `{0}`")]
    UnknownCase(String),

    #[error("case `{case}` has no explicit {what}; it is cataloged as external")]
    ExternalCase { case: String, what: &'static str },

    #[error("parameter belongs to case `{found}`, expected `{expected}`")]
    CaseMismatch { expected: String, found: String },

    #[error("invalid fiber type for case `{case}`: {detail}")]
    InvalidTau { case: String, detail: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("not in image of the transfer map: {0}")]
    NotInImage(String),

    #[error("schema error at {location}: {detail}")]
    Schema { location: String, detail: String },

    #[error("entry `{label}`: {source}")]
    Entry {
        label: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn schema(location: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Schema {
            location: location.into(),
            detail: detail.into(),
        }
    }

    /// True for malformed input documents (as opposed to mathematical
    /// failures such as a parameter outside the transfer image).
    pub fn is_schema(&self) -> bool {
        match self {
            Error::Schema { .. } | Error::Parse(_) => true,
            Error::Entry { source, .. } => source.is_schema(),
            _ => false,
        }
    }
}
