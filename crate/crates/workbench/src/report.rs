//! Suite reports.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub subject: String,
    pub check: String,
    pub status: CheckStatus,
    /// Failure witness, or the reason for a skip.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub suite: String,
    pub corpus_size: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub checks: Vec<CheckResult>,
    pub elapsed_ms: u128,
}

impl RunReport {
    pub fn new(suite: &str, corpus_size: usize) -> Self {
        RunReport {
            suite: suite.to_string(),
            corpus_size,
            passed: 0,
            failed: 0,
            skipped: 0,
            checks: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn record(&mut self, subject: &str, check: &str, outcome: Result<(), Value>) {
        let (status, witness) = match outcome {
            Ok(()) => (CheckStatus::Pass, None),
            Err(w) => (CheckStatus::Fail, Some(w)),
        };
        self.push(subject, check, status, witness);
    }

    pub fn skip(&mut self, subject: &str, check: &str, reason: impl Into<String>) {
        self.push(subject, check, CheckStatus::Skipped, Some(Value::String(reason.into())));
    }

    fn push(&mut self, subject: &str, check: &str, status: CheckStatus, witness: Option<Value>) {
        match status {
            CheckStatus::Pass => self.passed += 1,
            CheckStatus::Fail => self.failed += 1,
            CheckStatus::Skipped => self.skipped += 1,
        }
        self.checks.push(CheckResult {
            subject: subject.to_string(),
            check: check.to_string(),
            status,
            witness,
        });
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    /// The report without timing, for determinism comparisons.
    pub fn to_json_untimed(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    }
}
