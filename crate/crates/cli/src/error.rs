use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Usage or configuration problem; exit code 2.
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Qwk(#[from] qwk::QwkError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Every error is a usage/config error under the exit-code contract;
    /// check failures are reported through the report, not as errors.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
