/// Failure modes of the scenario layer, mapped onto process exit codes:
/// configuration and validation problems exit with 2, I/O and anything
/// unexpected with 1.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Parse { .. } => 2,
            CliError::Io(_) => 1,
        }
    }
}

impl From<qcorr::Error> for CliError {
    fn from(err: qcorr::Error) -> Self {
        CliError::Config(err.to_string())
    }
}
