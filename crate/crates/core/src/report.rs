//! Machine-readable verdicts shared by every checker.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Version tag of the JSON report layout.
pub const SCHEMA: &str = "gmak-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    Inconclusive,
    NotApplicable,
}

impl Status {
    /// Exit code of a single-check run: 0 holds, 1 fails, 2 otherwise.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Holds => 0,
            Status::Fails => 1,
            Status::Inconclusive | Status::NotApplicable => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub name: String,
    pub status: Status,
    /// The criterion the verdict refers to, in words.
    pub anchor: String,
    pub evidence: Value,
    pub counterexample: Option<Value>,
    /// Wall-clock milliseconds; `None` when timing is disabled.
    pub ms: Option<f64>,
}

impl ConditionReport {
    pub fn new(name: &str, anchor: &str, status: Status) -> Self {
        ConditionReport {
            name: name.to_string(),
            status,
            anchor: anchor.to_string(),
            evidence: Value::Null,
            counterexample: None,
            ms: None,
        }
    }

    pub fn with_evidence(mut self, evidence: Value) -> Self {
        self.evidence = evidence;
        self
    }

    pub fn with_counterexample(mut self, c: Value) -> Self {
        self.counterexample = Some(c);
        self
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn fails(&self) -> bool {
        self.status == Status::Fails
    }

    /// Runs `f` and records its duration in `ms`.
    pub fn timed<F: FnOnce() -> ConditionReport>(f: F) -> ConditionReport {
        let start = Instant::now();
        let mut r = f();
        r.ms = Some(start.elapsed().as_secs_f64() * 1e3);
        r
    }
}
