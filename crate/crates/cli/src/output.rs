use std::fmt::Write as _;
use std::path::Path;

use clap::ValueEnum;
use qc_core::io::Envelope;
use qc_core::Error;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

/// An error with the exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        use qc_core::quantale::QuantaleError;
        let code = match &e {
            Error::Precondition(_) | Error::Refused(_) | Error::Degenerate(_) | Error::Inconsistent(_) => 1,
            Error::Quantale(QuantaleError::Invalid(_) | QuantaleError::Precondition(_) | QuantaleError::NoWitness(_)) => 1,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// A finished command: the structured payload, its text rendering, and
/// whether a mathematical failure was found.
pub struct Output {
    pub kind: &'static str,
    pub payload: Value,
    pub text: String,
    pub failed: bool,
}

impl Output {
    pub fn new(kind: &'static str, payload: &impl Serialize, text: String, failed: bool) -> Self {
        Output {
            kind,
            payload: serde_json::to_value(payload).expect("serializable payload"),
            text,
            failed,
        }
    }

    pub fn emit(&self, format: Format, path: Option<&Path>) -> Result<(), CliError> {
        let body = match format {
            Format::Text => self.text.clone(),
            Format::Structured => {
                let env = Envelope {
                    schema: qc_core::io::SCHEMA.into(),
                    kind: self.kind.into(),
                    payload: self.payload.clone(),
                };
                serde_json::to_string_pretty(&env).expect("serializable envelope") + "\n"
            }
        };
        match path {
            Some(p) => std::fs::write(p, body).map_err(|e| CliError::usage(format!("{}: {e}", p.display()))),
            None => {
                print!("{body}");
                Ok(())
            }
        }
    }
}

/// Text lines where each negative verdict is preceded by its witness.
#[derive(Default)]
pub struct Text(String);

impl Text {
    pub fn verdict(&mut self, label: &str, holds: bool, witness: Option<&str>) {
        if let Some(w) = witness {
            let _ = writeln!(self.0, "  witness: {w}");
        }
        let _ = writeln!(self.0, "{label}: {}", if holds { "yes" } else { "no" });
    }

    pub fn line(&mut self, line: impl AsRef<str>) {
        let _ = writeln!(self.0, "{}", line.as_ref());
    }

    pub fn finish(self) -> String {
        self.0
    }
}
