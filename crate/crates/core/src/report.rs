//! Pass/fail records produced by the verifiers.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub claim: String,
    pub sample: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn record(&mut self, claim: &str, sample: impl Into<String>, ok: bool) -> bool {
        self.push(claim, sample, if ok { Status::Pass } else { Status::Fail }, None);
        ok
    }

    pub fn record_with(&mut self, claim: &str, sample: impl Into<String>, ok: bool, detail: impl Into<String>) -> bool {
        self.push(claim, sample, if ok { Status::Pass } else { Status::Fail }, Some(detail.into()));
        ok
    }

    pub fn skip(&mut self, claim: &str, sample: impl Into<String>, reason: impl Into<String>) {
        self.push(claim, sample, Status::Skip, Some(reason.into()));
    }

    pub fn inconclusive(&mut self, claim: &str, sample: impl Into<String>, reason: impl Into<String>) {
        self.push(claim, sample, Status::Inconclusive, Some(reason.into()));
    }

    fn push(&mut self, claim: &str, sample: impl Into<String>, status: Status, detail: Option<String>) {
        self.checks.push(Check { claim: claim.to_string(), sample: sample.into(), status, detail });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn all_passed(&self) -> bool {
        self.count(Status::Fail) == 0 && self.count(Status::Inconclusive) == 0
    }

    /// Overall status: any failure wins over inconclusive.
    pub fn status(&self) -> Status {
        if self.count(Status::Fail) > 0 {
            Status::Fail
        } else if self.count(Status::Inconclusive) > 0 {
            Status::Inconclusive
        } else {
            Status::Pass
        }
    }
}
