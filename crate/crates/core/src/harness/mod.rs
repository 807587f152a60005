//! Check suite covering every acceptance criterion, plus the independent
//! elimination oracle it cross-checks against.

mod checks;
pub mod oracle;
pub mod stretch;

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use checks::CHECKS;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        })
    }
}

/// Outcome of one named check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    /// Acceptance criterion number, `1..=10`.
    pub criterion: u32,
    pub specs: Vec<String>,
    pub status: Status,
    /// Optional checks never count as a failure of the suite.
    pub optional: bool,
    /// Seed that reproduces the run.
    pub seed: u64,
    /// Time limit the check is held to, in seconds.
    pub limit_seconds: f64,
    pub seconds: f64,
    pub detail: String,
    pub witness: serde_json::Value,
}

impl CheckReport {
    /// True unless a mandatory check failed.
    pub fn ok(&self) -> bool {
        self.optional || self.status != Status::Fail
    }

    pub fn within_limit(&self) -> bool {
        self.seconds <= self.limit_seconds
    }

    pub fn summary_line(&self) -> String {
        let tag = if self.optional { " (optional)" } else { "" };
        format!(
            "{} [{}] {}{}: {} ({:.2}s / {:.0}s)",
            self.status, self.criterion, self.name, tag, self.detail, self.seconds, self.limit_seconds
        )
    }
}

/// Result of a check body before timing is attached.
pub(crate) struct Outcome {
    pub status: Status,
    pub detail: String,
    pub witness: serde_json::Value,
}

impl Outcome {
    pub fn new(pass: bool, detail: impl Into<String>, witness: serde_json::Value) -> Self {
        let status = if pass { Status::Pass } else { Status::Fail };
        Self { status, detail: detail.into(), witness }
    }

    pub fn error(e: impl fmt::Display) -> Self {
        Self { status: Status::Fail, detail: format!("error: {e}"), witness: serde_json::Value::Null }
    }
}

/// Static description of one check.
pub struct CheckDef {
    pub name: &'static str,
    pub criterion: u32,
    pub specs: &'static [(u32, u32)],
    pub optional: bool,
    pub limit_seconds: f64,
    pub(crate) run: fn(u64) -> Outcome,
}

/// Names accepted by [`run_checks`].
pub fn suite_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.name).chain(["all"]).collect()
}

fn run_one(def: &CheckDef, seed: u64) -> CheckReport {
    let start = Instant::now();
    let out = (def.run)(seed);
    CheckReport {
        name: def.name.to_string(),
        criterion: def.criterion,
        specs: def.specs.iter().map(|(a, b)| format!("({a},{b})")).collect(),
        status: out.status,
        optional: def.optional,
        seed,
        limit_seconds: def.limit_seconds,
        seconds: start.elapsed().as_secs_f64(),
        detail: out.detail,
        witness: out.witness,
    }
}

/// Runs the named suite (`"all"` runs every check) and returns
/// reports in criterion order. `None` for an unknown suite name.
pub fn run_checks(suite: &str, seed: u64) -> Option<Vec<CheckReport>> {
    let selected: Vec<&CheckDef> = match suite {
        "all" => CHECKS.iter().collect(),
        name => CHECKS.iter().filter(|c| c.name == name).collect(),
    };
    if selected.is_empty() {
        return None;
    }
    let mut reports: Vec<CheckReport> = selected.par_iter().map(|d| run_one(d, seed)).collect();
    reports.sort_by_key(|r| r.criterion);
    Some(reports)
}

/// Runs a single check by name.
pub fn run_check(name: &str, seed: u64) -> Option<CheckReport> {
    CHECKS.iter().find(|c| c.name == name).map(|d| run_one(d, seed))
}
