//! Standard-library companion to `freepoint-core`: fixture and system
//! files, JSON payloads with run manifests, rayon drivers with
//! deterministic reductions, and the `freepoint` command line.

use std::fmt;

pub mod cli;
pub mod commands;
pub mod fixtures;
pub mod json;
pub mod manifest;
pub mod parallel;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    /// A mathematical counterexample: a check that must hold failed.
    pub const COUNTEREXAMPLE: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const BUDGET: u8 = 3;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { code: exit::USAGE, message: message.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

impl From<freepoint_core::Error> for Failure {
    fn from(e: freepoint_core::Error) -> Self {
        use freepoint_core::Error;
        let code = match e {
            Error::BudgetExceeded { .. } | Error::Exhausted { complete: false, .. } => exit::BUDGET,
            Error::Exhausted { complete: true, .. } => exit::COUNTEREXAMPLE,
            _ => exit::USAGE,
        };
        let message = match &e {
            Error::ModulusNotIrreducible { .. } => format!("ModulusNotIrreducible: {e}"),
            _ => e.to_string(),
        };
        Failure { code, message }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::input(format!("io: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::input(format!("json: {e}"))
    }
}
