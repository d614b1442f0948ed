//! Expression language, evaluator and report generation behind `krv-lab`.

pub mod commands;
pub mod error;
pub mod eval;
pub mod parse;

pub use error::CliError;
pub use eval::{eval_str, Value};
pub use parse::parse;
