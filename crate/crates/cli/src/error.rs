use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("type error at {pos}: {context} expects {expected}, got {actual}")]
    Type { pos: usize, context: String, expected: String, actual: &'static str },
    #[error(transparent)]
    Math(#[from] krv_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub const USAGE_EXIT: u8 = 2;
}
