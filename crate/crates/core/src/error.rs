use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of a model.
    #[error("domain error: {0}")]
    Domain(String),

    /// A scenario field failed validation.
    #[error("invalid field `{field}`: {constraint}")]
    Validation { field: String, constraint: String },

    /// The scenario document could not be parsed against the schema.
    #[error("scenario schema violation: {0}")]
    Schema(String),

    #[error("gas table: {0}")]
    GasTable(String),

    /// A request that is well-formed but cannot be honoured for this scenario.
    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn validation(field: impl Into<String>, constraint: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            constraint: constraint.into(),
        }
    }
}
