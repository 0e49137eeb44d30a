use std::io::Write;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use polycert::Error;

/// Why a subcommand did not produce a positive answer.
#[derive(Debug)]
pub enum Failure {
    /// Checked and false, or a mathematical precondition not met (exit 1).
    Negative(String),
    /// Bad arguments, unreadable or malformed files (exit 2).
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Precondition(_) | Error::Unbounded(_) | Error::PrecisionCap { .. } => Failure::Negative(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(format!("{e:#}"))
    }
}

pub struct Outcome {
    pub outputs: Value,
    pub negative: bool,
}

impl Outcome {
    pub fn ok(outputs: Value) -> Self {
        Outcome { outputs, negative: false }
    }

    pub fn negative(outputs: Value) -> Self {
        Outcome { outputs, negative: true }
    }
}

/// Running digest of everything a run read: file contents and parameters.
pub struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    pub fn new(subcommand: &str) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(subcommand.as_bytes());
        Inputs { hasher }
    }

    pub fn add(&mut self, tag: &str, bytes: &[u8]) {
        self.hasher.update((tag.len() as u64).to_le_bytes());
        self.hasher.update(tag.as_bytes());
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(bytes);
    }

    fn digest(&self) -> String {
        hex::encode(self.hasher.clone().finalize())
    }
}

#[derive(Serialize)]
pub struct RunReport {
    subcommand: String,
    inputs_digest: String,
    status: &'static str,
    outputs: Value,
    /// No floating point entered any verdict.
    exact: bool,
    timing_ms: u64,
}

impl RunReport {
    pub fn new(subcommand: &str, inputs: &Inputs, out: Outcome, timing_ms: u64) -> Self {
        RunReport {
            subcommand: subcommand.into(),
            inputs_digest: inputs.digest(),
            status: if out.negative { "negative" } else { "ok" },
            outputs: out.outputs,
            exact: true,
            timing_ms,
        }
    }

    pub fn print(&self) {
        // a closed pipe downstream is not our failure
        let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(self).expect("report serializes"));
    }
}
