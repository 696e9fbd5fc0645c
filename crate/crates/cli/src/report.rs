//! Reports, checks and the mapping from errors to exit codes.

use std::fmt::Write as _;

use recovery_core::density::DensityError;
use recovery_core::finchar::FincharError;
use recovery_core::lattice::LatticeError;
use recovery_core::liealg::LieError;
use recovery_core::weights::WeightError;
use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECKS_FAILED: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_BAD_INPUT: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    /// Malformed input; reported as a one-line diagnostic.
    BadInput(String),
    /// A module refused the computation; reported with the error name.
    Domain { name: &'static str, message: String },
}

impl From<FincharError> for CliError {
    fn from(e: FincharError) -> Self {
        match e {
            FincharError::Parse(m) => CliError::BadInput(m),
            e => CliError::Domain { name: e.name(), message: e.to_string() },
        }
    }
}

impl From<WeightError> for CliError {
    fn from(e: WeightError) -> Self {
        match e {
            WeightError::Parse(_)
            | WeightError::BadLength { .. }
            | WeightError::ZeroRank
            | WeightError::ZeroMultiplicity
            | WeightError::Empty => CliError::BadInput(e.to_string()),
            e => CliError::Domain { name: e.name(), message: e.to_string() },
        }
    }
}

impl From<LieError> for CliError {
    fn from(e: LieError) -> Self {
        match e {
            LieError::UnknownAlgebra(_) | LieError::NotDominant(_) | LieError::LengthMismatch { .. } => {
                CliError::BadInput(e.to_string())
            }
            e => CliError::Domain { name: e.name(), message: e.to_string() },
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        CliError::Domain { name: e.name(), message: e.to_string() }
    }
}

impl From<DensityError> for CliError {
    fn from(e: DensityError) -> Self {
        match e {
            DensityError::Finchar(f) => f.into(),
            e => CliError::Domain { name: e.name(), message: e.to_string() },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

impl Check {
    pub fn new(name: &str, pass: bool, details: impl Into<String>) -> Self {
        Check { name: name.to_string(), pass, details: details.into() }
    }
}

/// What a command produces on success.
pub struct Outcome {
    pub result: Value,
    pub checks: Vec<Check>,
}

impl Outcome {
    pub fn new(result: impl Serialize, checks: Vec<Check>) -> Self {
        Outcome { result: serde_json::to_value(result).expect("serializable result"), checks }
    }
}

pub struct Report {
    pub command: String,
    pub config: Value,
    pub outcome: Result<Outcome, (&'static str, String)>,
    pub wall_time_ms: u128,
}

impl Report {
    pub fn exit_code(&self, strict_checks: bool) -> i32 {
        match &self.outcome {
            Err(_) => EXIT_DOMAIN,
            Ok(o) if strict_checks && o.checks.iter().any(|c| !c.pass) => EXIT_CHECKS_FAILED,
            Ok(_) => EXIT_OK,
        }
    }

    /// JSON with keys in sorted order.
    pub fn to_json(&self) -> Value {
        let (status, result, checks, error) = match &self.outcome {
            Ok(o) => ("ok", o.result.clone(), serde_json::to_value(&o.checks).expect("checks"), Value::Null),
            Err((name, message)) => (
                "error",
                Value::Null,
                json!([{ "name": "completed", "pass": false, "details": format!("{name}: {message}") }]),
                json!({ "name": name, "message": message }),
            ),
        };
        json!({
            "command": self.command,
            "config": self.config,
            "status": status,
            "result": result,
            "checks": checks,
            "error": error,
            "wall_time_ms": self.wall_time_ms,
        })
    }

    pub fn to_text(&self) -> String {
        let v = self.to_json();
        let mut s = String::new();
        writeln!(s, "command: {}", self.command).unwrap();
        writeln!(s, "status: {}", v["status"].as_str().unwrap_or("")).unwrap();
        if let Err((name, message)) = &self.outcome {
            writeln!(s, "error: {name}: {message}").unwrap();
        }
        for c in v["checks"].as_array().into_iter().flatten() {
            let pass = if c["pass"].as_bool() == Some(true) { "PASS" } else { "FAIL" };
            writeln!(s, "check {pass} {}: {}", c["name"].as_str().unwrap_or(""), c["details"].as_str().unwrap_or(""))
                .unwrap();
        }
        if let Value::Object(map) = &v["result"] {
            for (k, val) in map {
                let shown = match val {
                    Value::String(t) => t.clone(),
                    other => other.to_string(),
                };
                writeln!(s, "{k}: {shown}").unwrap();
            }
        }
        writeln!(s, "wall_time_ms: {}", self.wall_time_ms).unwrap();
        s
    }
}
