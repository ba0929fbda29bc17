//! Machine-readable verification reports.
//!
//! Every public verification entry point in this crate produces exact
//! residuals or certificates; this module packages them into a uniform,
//! serializable [`Report`] so that runs can be archived, diffed and
//! re-parsed. Two invariants matter:
//!
//! * reports round-trip through JSON (`parse(serialize(r)) == r`), and
//! * two runs with the same [`RunConfig`] (including the sampling seed)
//!   produce byte-identical JSON once the timing fields are normalized
//!   (see [`Report::normalized`]).
//!
//! All numeric evidence is rendered to strings (exact rationals as
//! `num/den`, floats as fixed-precision decimals) to keep the format
//! lossless, ordered and independent of float formatting quirks.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Outcome of a single named check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Output format of a run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// One labelled piece of numeric evidence attached to a check: a residual,
/// a certificate value, a count, a rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quantity {
    pub label: String,
    pub value: String,
}

impl Quantity {
    pub fn new(label: impl Into<String>, value: impl ToString) -> Self {
        Quantity {
            label: label.into(),
            value: value.to_string(),
        }
    }
}

/// Echo of the run configuration, embedded in every report.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Subcommand name.
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    /// Explicit parameter grid, when the run covers several points.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<Vec<(u64, u32)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<String>,
    /// Working precision in bits for floating-point checks.
    pub precision: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scheme_file: Option<String>,
    pub output: OutputFormat,
    /// Seed for randomized sampling; fixed seed means reproducible report.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Command-specific settings that have no dedicated field (e.g. Sturm
    /// interval endpoints). Sorted, hence deterministic.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn new(command: impl Into<String>, precision: u32) -> Self {
        RunConfig {
            command: command.into(),
            precision,
            ..RunConfig::default()
        }
    }
}

/// Result record of one named check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    /// Residuals, certificates and other numeric evidence.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub evidence: Vec<Quantity>,
    /// What went wrong (required for `Fail`) or why the check was skipped.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Wall-clock time of the check in milliseconds. Not part of the
    /// deterministic payload; see [`Report::normalized`].
    pub elapsed_ms: u64,
}

/// Stopwatch builder for [`CheckRecord`]s: start it, run the check, then
/// convert the outcome into a record.
#[derive(Debug)]
pub struct CheckTimer {
    name: String,
    started: Instant,
    evidence: Vec<Quantity>,
}

impl CheckTimer {
    pub fn start(name: impl Into<String>) -> Self {
        CheckTimer {
            name: name.into(),
            started: Instant::now(),
            evidence: Vec::new(),
        }
    }

    /// Attaches a labelled quantity to the eventual record.
    pub fn note(&mut self, label: impl Into<String>, value: impl ToString) {
        self.evidence.push(Quantity::new(label, value));
    }

    fn finish(self, status: Status, witness: Option<String>) -> CheckRecord {
        CheckRecord {
            name: self.name,
            status,
            evidence: self.evidence,
            witness,
            elapsed_ms: self.started.elapsed().as_millis() as u64,
        }
    }

    pub fn pass(self) -> CheckRecord {
        self.finish(Status::Pass, None)
    }

    pub fn fail(self, witness: impl Into<String>) -> CheckRecord {
        self.finish(Status::Fail, Some(witness.into()))
    }

    pub fn skip(self, reason: impl Into<String>) -> CheckRecord {
        self.finish(Status::Skipped, Some(reason.into()))
    }

    /// `pass` when `ok`, otherwise `fail` with the given witness.
    pub fn verdict(self, ok: bool, witness: impl Into<String>) -> CheckRecord {
        if ok {
            self.pass()
        } else {
            self.fail(witness)
        }
    }
}

/// A full verification report: toolkit version, configuration echo and the
/// ordered list of check records.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// Toolkit name and version that produced the report.
    pub toolkit: String,
    pub config: RunConfig,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn new(config: RunConfig) -> Self {
        Report {
            toolkit: format!("hadamard-scheme {}", env!("CARGO_PKG_VERSION")),
            config,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.checks.push(record);
    }

    /// `true` when no check failed (skipped checks do not fail a run).
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let mut counts = (0, 0, 0);
        for c in &self.checks {
            match c.status {
                Status::Pass => counts.0 += 1,
                Status::Fail => counts.1 += 1,
                Status::Skipped => counts.2 += 1,
            }
        }
        counts
    }

    /// Copy with every timing field zeroed: the deterministic payload.
    /// Two runs with identical configuration must produce `normalized`
    /// reports with byte-identical JSON.
    pub fn normalized(&self) -> Report {
        let mut copy = self.clone();
        for check in &mut copy.checks {
            check.elapsed_ms = 0;
        }
        copy
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            msg: format!("invalid report JSON: {e}"),
        })
    }

    /// Human-readable rendering: one line per check plus a summary.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{} :: {}\n", self.toolkit, self.config.command));
        for check in &self.checks {
            let tag = match check.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            out.push_str(&format!("[{tag}] {} ({} ms)\n", check.name, check.elapsed_ms));
            for q in &check.evidence {
                out.push_str(&format!("       {} = {}\n", q.label, q.value));
            }
            if let Some(w) = &check.witness {
                out.push_str(&format!("       -> {w}\n"));
            }
        }
        let (pass, fail, skip) = self.counts();
        out.push_str(&format!(
            "{pass} passed, {fail} failed, {skip} skipped\n"
        ));
        out
    }
}
