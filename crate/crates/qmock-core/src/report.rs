//! Verification records and reports.
//!
//! Every batch check emits one record per comparison; a report bundles the
//! records with summary counts. Reports serialize to JSON with rationals as
//! "num/den" strings and round-trip bit-identically.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::series::{Coeff, EqReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Equal,
    Mismatch,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub exponent: i64,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub id: String,
    pub comparison: String,
    pub status: Status,
    pub order: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub first_mismatch: Option<Mismatch>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub message: Option<String>,
    pub elapsed_ms: u64,
}

impl Record {
    /// Run a comparison closure, timing it and folding its outcome.
    pub fn run(
        id: impl Into<String>,
        comparison: impl Into<String>,
        order: i64,
        f: impl FnOnce() -> Result<EqReport>,
    ) -> Record {
        let start = Instant::now();
        let outcome = f();
        let elapsed_ms = start.elapsed().as_millis() as u64;
        let (status, first_mismatch, message) = match outcome {
            Ok(EqReport::Equal) => (Status::Equal, None, None),
            Ok(EqReport::FirstMismatch {
                exponent,
                left,
                right,
            }) => (
                Status::Mismatch,
                Some(Mismatch {
                    exponent,
                    left: rational_str(&left),
                    right: rational_str(&right),
                }),
                None,
            ),
            Err(e) => (Status::Error, None, Some(e.to_string())),
        };
        Record {
            id: id.into(),
            comparison: comparison.into(),
            status,
            order,
            first_mismatch,
            message,
            elapsed_ms,
        }
    }

    /// A record for a property that either holds or fails with a note.
    pub fn property(
        id: impl Into<String>,
        comparison: impl Into<String>,
        order: i64,
        f: impl FnOnce() -> Result<(bool, Option<String>)>,
    ) -> Record {
        let start = Instant::now();
        let outcome = f();
        let elapsed_ms = start.elapsed().as_millis() as u64;
        let (status, message) = match outcome {
            Ok((true, note)) => (Status::Equal, note),
            Ok((false, note)) => (Status::Mismatch, note),
            Err(e) => (Status::Error, Some(e.to_string())),
        };
        Record {
            id: id.into(),
            comparison: comparison.into(),
            status,
            order,
            first_mismatch: None,
            message,
            elapsed_ms,
        }
    }

    pub fn render_line(&self) -> String {
        let tag = match self.status {
            Status::Equal => "ok      ",
            Status::Mismatch => "MISMATCH",
            Status::Error => "ERROR   ",
        };
        let mut line = format!(
            "[{tag}] {:<5} {:<44} order {:>3}  {:>6} ms",
            self.id, self.comparison, self.order, self.elapsed_ms
        );
        if let Some(m) = &self.first_mismatch {
            line.push_str(&format!(
                "  first at q^{}: {} vs {}",
                m.exponent, m.left, m.right
            ));
        }
        if let Some(msg) = &self.message {
            line.push_str(&format!("  ({msg})"));
        }
        line
    }
}

pub fn rational_str(c: &Coeff) -> String {
    c.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub equal: usize,
    pub mismatch: usize,
    pub error: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub command: String,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(command: impl Into<String>, mut records: Vec<Record>) -> VerificationReport {
        records.sort_by(|a, b| (&a.id, &a.comparison).cmp(&(&b.id, &b.comparison)));
        let summary = Summary {
            equal: records.iter().filter(|r| r.status == Status::Equal).count(),
            mismatch: records
                .iter()
                .filter(|r| r.status == Status::Mismatch)
                .count(),
            error: records.iter().filter(|r| r.status == Status::Error).count(),
        };
        VerificationReport {
            command: command.into(),
            records,
            summary,
        }
    }

    pub fn all_equal(&self) -> bool {
        self.summary.mismatch == 0 && self.summary.error == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::int;

    #[test]
    fn json_round_trip_is_identical() {
        let records = vec![
            Record::run("M5", "double_sum = hecke", 10, || Ok(EqReport::Equal)),
            Record::run("X", "a = b", 5, || {
                Ok(EqReport::FirstMismatch {
                    exponent: 3,
                    left: crate::series::rat(1, 2),
                    right: int(2),
                })
            }),
        ];
        let report = VerificationReport::new("verify", records);
        let json = serde_json::to_string_pretty(&report).unwrap();
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        let json2 = serde_json::to_string_pretty(&back).unwrap();
        assert_eq!(json, json2);
        assert!(!report.all_equal());
        assert_eq!(report.summary.equal, 1);
        assert_eq!(report.summary.mismatch, 1);
    }
}
