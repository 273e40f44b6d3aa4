//! Command-line driver for `degseq-core`: argument handling, map loading and output.

pub mod cli;
pub mod commands;
pub mod config;
pub mod render;

use thiserror::Error;

pub use commands::run;
pub use config::RunConfig;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { text: String, offset: usize, message: String },
    #[error(transparent)]
    Core(#[from] degseq_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 2 for anything wrong with the invocation, 1 for failures while computing.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Parse { .. } => 2,
            CliError::Core(degseq_core::Error::NeedsFiniteField(_)) => 2,
            _ => 1,
        }
    }

    /// Message for stderr; parse errors point at the offending byte.
    pub fn diagnostic(&self) -> String {
        match self {
            CliError::Parse { text, offset, message } => {
                let col = text.char_indices().take_while(|(i, _)| i < offset).count();
                format!("error: {}\n  {}\n  {}^", message, text, " ".repeat(col))
            }
            other => format!("error: {}", other),
        }
    }

    pub(crate) fn from_parse(text: &str, err: degseq_core::Error) -> CliError {
        match err {
            degseq_core::Error::Parse { offset, message } => {
                CliError::Parse { text: text.to_string(), offset, message }
            }
            other => CliError::Input(format!("invalid map `{}`: {}", text, other)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caret_under_offset() {
        let e = CliError::Parse { text: "P2 [x0 +]".into(), offset: 8, message: "unexpected ']'".into() };
        let d = e.diagnostic();
        let lines: Vec<&str> = d.lines().collect();
        assert_eq!(lines[2].find('^'), lines[1].find(']'));
        assert_eq!(e.exit_code(), 2);
        assert_eq!(CliError::Core(degseq_core::Error::ZeroMap).exit_code(), 1);
    }
}
