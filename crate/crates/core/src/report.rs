//! Machine-readable verification reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::series::Agreement;

/// Default number of agreed terms required before a series check counts.
pub const MIN_TERMS: u64 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Series,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Inconclusive,
    Failed,
}

impl Status {
    /// The worse of two outcomes.
    pub fn and(self, other: Status) -> Status {
        self.max(other)
    }
}

/// One sub-identity inside a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Detail {
    pub name: String,
    pub mode: Mode,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreed_terms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compared_down_to: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Recorded for reference; does not enter the report's status.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub informational: bool,
}

impl Detail {
    pub fn exact(name: impl Into<String>, ok: bool) -> Self {
        Detail {
            name: name.into(),
            mode: Mode::Exact,
            status: if ok { Status::Verified } else { Status::Failed },
            agreed_terms: None,
            compared_down_to: None,
            first_mismatch: None,
            note: None,
            informational: false,
        }
    }

    pub fn series(name: impl Into<String>, a: &Agreement, min_terms: u64) -> Self {
        let status = if !a.equal {
            Status::Failed
        } else if a.agreed_terms >= min_terms {
            Status::Verified
        } else {
            Status::Inconclusive
        };
        Detail {
            name: name.into(),
            mode: Mode::Series,
            status,
            agreed_terms: Some(a.agreed_terms),
            compared_down_to: Some(a.compared_down_to),
            first_mismatch: a.first_mismatch,
            note: None,
            informational: false,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Marks a check whose outcome is informational only.
    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: String,
    pub q: u32,
    pub params: BTreeMap<String, String>,
    pub mode: Mode,
    pub status: Status,
    /// Smallest agreement over the series checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreed_terms: Option<u64>,
    pub min_terms: u64,
    pub details: Vec<Detail>,
}

impl VerificationReport {
    pub fn new(family: impl Into<String>, q: u32) -> Self {
        VerificationReport {
            family: family.into(),
            q,
            params: BTreeMap::new(),
            mode: Mode::Exact,
            status: Status::Verified,
            agreed_terms: None,
            min_terms: MIN_TERMS,
            details: Vec::new(),
        }
    }

    pub fn param(mut self, k: &str, v: impl ToString) -> Self {
        self.params.insert(k.to_string(), v.to_string());
        self
    }

    pub fn push(&mut self, d: Detail) {
        if d.informational {
            self.details.push(d);
            return;
        }
        if d.mode == Mode::Series {
            self.mode = Mode::Series;
            if let Some(n) = d.agreed_terms {
                self.agreed_terms = Some(self.agreed_terms.map_or(n, |m| m.min(n)));
            }
        }
        self.status = self.status.and(d.status);
        self.details.push(d);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        for d in other.details {
            self.push(d);
        }
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }
}
