use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Io(String),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Model(#[from] colourmodels::Error),
}
