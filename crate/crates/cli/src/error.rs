use thiserror::Error;

/// Exit statuses. Clap itself exits with 2 on usage errors.
pub mod exit {
    pub const FAILURE: i32 = 1;
    pub const VALIDATION: i32 = 3;
    pub const IO: i32 = 4;
    pub const WRONG_KEY: i32 = 5;
    pub const CORRUPT_DOCUMENT: i32 = 6;
    pub const ENCODING: i32 = 7;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid config field `{field}`: {reason}")]
    Validation { field: String, reason: String },

    #[error("io error: {0}")]
    Io(String),

    #[error("{0}")]
    Encoding(String),

    #[error("{0}")]
    WrongKey(String),

    #[error("{0}")]
    CorruptDocument(String),

    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn validation(field: impl Into<String>, reason: impl Into<String>) -> Self {
        CliError::Validation {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation { .. } => exit::VALIDATION,
            CliError::Io(_) => exit::IO,
            CliError::Encoding(_) => exit::ENCODING,
            CliError::WrongKey(_) => exit::WRONG_KEY,
            CliError::CorruptDocument(_) => exit::CORRUPT_DOCUMENT,
            CliError::Failure(_) => exit::FAILURE,
        }
    }
}

impl From<fuzzcrypt_core::Error> for CliError {
    fn from(e: fuzzcrypt_core::Error) -> Self {
        use fuzzcrypt_core::Error as E;
        let msg = e.to_string();
        match e {
            E::InvalidParameter { field, reason } => CliError::validation(field, reason),
            E::Io { .. } => CliError::Io(msg),
            E::Encoding { .. } => CliError::Encoding(msg),
            E::WrongKey { .. } => CliError::WrongKey(msg),
            E::CorruptDocument(_) => CliError::CorruptDocument(msg),
            _ => CliError::Failure(msg),
        }
    }
}
