//! Verification reports: one record per checked identity.

use crate::expr::Expr;
use crate::lie::LieAlgebra;
use crate::text::{format_pretty, to_json};
use serde_json::{json, Value};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }
}

/// A single identity `lhs = rhs` (or a boolean property, recorded with empty
/// sides and a note).
#[derive(Clone, Debug)]
pub struct Check {
    pub identity: String,
    pub status: Status,
    pub lhs: Expr,
    pub rhs: Expr,
    pub note: Option<String>,
}

/// Ordered collection of checks produced by one suite.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub suite: String,
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report { suite: suite.into(), seed: None, checks: Vec::new() }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Records `lhs = rhs`; returns whether it held.
    pub fn eq(&mut self, identity: impl Into<String>, lhs: Expr, rhs: Expr) -> bool {
        let ok = lhs == rhs;
        self.checks.push(Check { identity: identity.into(), status: if ok { Status::Ok } else { Status::Fail }, lhs, rhs, note: None });
        ok
    }

    /// Records a boolean property.
    pub fn flag(&mut self, identity: impl Into<String>, ok: bool, note: impl Into<String>) -> bool {
        let note = note.into();
        self.checks.push(Check {
            identity: identity.into(),
            status: if ok { Status::Ok } else { Status::Fail },
            lhs: Expr::zero(),
            rhs: Expr::zero(),
            note: if note.is_empty() { None } else { Some(note) },
        });
        ok
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// True when no check failed (inconclusive checks do not count as failures).
    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn has_inconclusive(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Inconclusive)
    }

    pub fn to_json(&self, lie: Option<&LieAlgebra>) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut v = json!({
                    "identity": c.identity,
                    "status": c.status.as_str(),
                    "lhs": to_json(&c.lhs, lie),
                    "rhs": to_json(&c.rhs, lie),
                });
                if let Some(n) = &c.note {
                    v["note"] = json!(n);
                }
                v
            })
            .collect();
        let mut out = json!({
            "suite": self.suite,
            "passed": self.passed(),
            "inconclusive": self.has_inconclusive(),
            "checks": checks,
        });
        if let Some(s) = self.seed {
            out["seed"] = json!(s);
        }
        out
    }

    /// Multi-line human-readable rendering; failing checks show both sides.
    pub fn render(&self, lie: Option<&LieAlgebra>) -> String {
        let mut s = format!("suite {}: {}\n", self.suite, if self.passed() { "ok" } else { "FAIL" });
        for c in &self.checks {
            s.push_str(&format!("  [{}] {}", c.status.as_str(), c.identity));
            if let Some(n) = &c.note {
                s.push_str(&format!(" ({n})"));
            }
            s.push('\n');
            if c.status == Status::Fail && !(c.lhs.is_zero() && c.rhs.is_zero()) {
                s.push_str(&format!("      lhs = {}\n      rhs = {}\n", format_pretty(&c.lhs, lie), format_pretty(&c.rhs, lie)));
            }
        }
        s
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(None))
    }
}
