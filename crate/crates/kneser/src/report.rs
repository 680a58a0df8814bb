//! Serializable verification reports.
//!
//! In every [`Mismatch`], `expected` is the ground truth (usually BFS) and
//! `actual` is the closed-form value under test.

use std::collections::BTreeMap;

use kneser_core::FamilySpec;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Flagged,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    pub expected: String,
    pub actual: String,
}

impl Mismatch {
    pub fn at(s: u32, expected: impl ToString, actual: impl ToString) -> Self {
        Mismatch {
            s: Some(s),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }

    pub fn global(expected: impl ToString, actual: impl ToString) -> Self {
        Mismatch {
            s: None,
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

/// One named comparison inside a report.
///
/// `Pass` never carries mismatches; `Fail` and `Flagged` always do.
/// `Skipped` carries none and explains itself in `note`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub mismatches: Vec<Mismatch>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, String>,
}

impl Check {
    fn new(name: &str, status: CheckStatus, mismatches: Vec<Mismatch>) -> Self {
        Check {
            name: name.to_string(),
            status,
            mismatches,
            note: None,
            values: BTreeMap::new(),
        }
    }

    /// Pass when `mismatches` is empty, otherwise fail.
    pub fn strict(name: &str, mismatches: Vec<Mismatch>) -> Self {
        let status = if mismatches.is_empty() {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        Check::new(name, status, mismatches)
    }

    /// Pass when `mismatches` is empty, otherwise flagged.
    pub fn advisory(name: &str, mismatches: Vec<Mismatch>) -> Self {
        let status = if mismatches.is_empty() {
            CheckStatus::Pass
        } else {
            CheckStatus::Flagged
        };
        Check::new(name, status, mismatches)
    }

    pub fn skipped(name: &str, reason: impl Into<String>) -> Self {
        Check::new(name, CheckStatus::Skipped, Vec::new()).with_note(reason)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_value(mut self, key: &str, value: impl ToString) -> Self {
        self.values.insert(key.to_string(), value.to_string());
        self
    }
}

/// Parameters of a report, flattened for serialization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub n: u32,
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<u32>,
}

impl From<&FamilySpec> for ParamsRecord {
    fn from(spec: &FamilySpec) -> Self {
        let mut record = ParamsRecord {
            n: spec.n(),
            k: spec.k(),
            r: None,
            d: None,
            i: None,
        };
        match spec {
            FamilySpec::Kneser(p) => record.r = Some(p.r()),
            FamilySpec::Exact(p) => {
                record.r = Some(p.r());
                record.d = Some(p.d());
            }
            FamilySpec::GenKneser(p, _) | FamilySpec::Johnson(p) => record.i = Some(p.i()),
        }
        record
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: String,
    pub params: ParamsRecord,
    pub checks: Vec<Check>,
    pub vertex_count: u64,
    pub elapsed_ms: u64,
}

/// Overall verdict of a report: any fail, else any flag, else any pass, else skipped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Flagged,
    Fail,
    Skipped,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn outcome(&self) -> Outcome {
        let has = |status| self.checks.iter().any(|c| c.status == status);
        if has(CheckStatus::Fail) {
            Outcome::Fail
        } else if has(CheckStatus::Flagged) {
            Outcome::Flagged
        } else if has(CheckStatus::Pass) {
            Outcome::Pass
        } else {
            Outcome::Skipped
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub tuples: u64,
    pub passes: u64,
    pub flags: u64,
    pub fails: u64,
    pub skips: u64,
}

impl Summary {
    pub fn of<'a>(reports: impl IntoIterator<Item = &'a VerificationReport>) -> Self {
        let mut summary = Summary::default();
        for report in reports {
            summary.tuples += 1;
            match report.outcome() {
                Outcome::Pass => summary.passes += 1,
                Outcome::Flagged => summary.flags += 1,
                Outcome::Fail => summary.fails += 1,
                Outcome::Skipped => summary.skips += 1,
            }
        }
        summary
    }
}

/// The terminal line of a JSON-lines report stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryLine {
    pub summary: Summary,
}
