//! Audit reporting: per-check reports, suite aggregation, and the
//! exit-code policy.
//!
//! Every audit in this crate produces a [`CheckReport`]. The status
//! vocabulary separates three different ways a check can end short of a
//! clean pass: `Fail` (a falsified claim, always with a replayable
//! witness), `Inconclusive` (an oracle returned no verdict; the chain of
//! attempted evidence is recorded), and `Skipped` (the check has no
//! finite implementation for this input and says so rather than
//! pretending). Suites fold checks together and map to process exit
//! codes: failures dominate, inconclusive results are distinguishable
//! from success, skips never affect the code.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

/// Outcome of a single audit check.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuditStatus {
    Pass,
    Fail,
    Inconclusive,
    /// The check cannot be carried out by any finite procedure available
    /// to this engine; recorded and excluded from exit codes.
    SkippedUnimplementable,
}

impl fmt::Display for AuditStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AuditStatus::Pass => "PASS",
            AuditStatus::Fail => "FAIL",
            AuditStatus::Inconclusive => "INCONCLUSIVE",
            AuditStatus::SkippedUnimplementable => "SKIPPED-UNIMPLEMENTABLE",
        };
        f.write_str(s)
    }
}

/// One audited claim with its outcome and replay data.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub status: AuditStatus,
    /// Human-readable summary of what was checked and what happened.
    pub detail: String,
    /// Replay payload. Present on every failure (which object/map broke,
    /// in enough detail to rebuild it) and on every inconclusive result
    /// (the chain of oracle steps that returned no verdict).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    /// Named parameters the outcome depends on: truncation levels, seeds,
    /// corpus sizes, budgets.
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub params: BTreeMap<String, String>,
    /// Wall-clock duration of the check in milliseconds.
    pub millis: u64,
}

impl CheckReport {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> CheckReport {
        CheckReport {
            name: name.into(),
            status: AuditStatus::Pass,
            detail: detail.into(),
            witness: None,
            params: BTreeMap::new(),
            millis: 0,
        }
    }

    /// A failure; the witness is mandatory so the failure can be replayed.
    pub fn fail(
        name: impl Into<String>,
        detail: impl Into<String>,
        witness: impl Into<String>,
    ) -> CheckReport {
        CheckReport {
            name: name.into(),
            status: AuditStatus::Fail,
            detail: detail.into(),
            witness: Some(witness.into()),
            params: BTreeMap::new(),
            millis: 0,
        }
    }

    /// An oracle could not decide; the chain of attempted evidence is
    /// mandatory.
    pub fn inconclusive(
        name: impl Into<String>,
        detail: impl Into<String>,
        chain: impl Into<String>,
    ) -> CheckReport {
        CheckReport {
            name: name.into(),
            status: AuditStatus::Inconclusive,
            detail: detail.into(),
            witness: Some(chain.into()),
            params: BTreeMap::new(),
            millis: 0,
        }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> CheckReport {
        CheckReport {
            name: name.into(),
            status: AuditStatus::SkippedUnimplementable,
            detail: reason.into(),
            witness: None,
            params: BTreeMap::new(),
            millis: 0,
        }
    }

    pub fn with_param(mut self, key: impl Into<String>, value: impl fmt::Display) -> CheckReport {
        self.params.insert(key.into(), value.to_string());
        self
    }

    /// Stamps the elapsed time since `start`.
    pub fn timed(mut self, start: Instant) -> CheckReport {
        self.millis = start.elapsed().as_millis() as u64;
        self
    }

    /// One-line rendering: `status name — detail`.
    pub fn line(&self) -> String {
        let mut s = format!("{} {} — {}", self.status, self.name, self.detail);
        if !self.params.is_empty() {
            let ps: Vec<String> = self
                .params
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            s.push_str(&format!(" [{}]", ps.join(", ")));
        }
        if let Some(w) = &self.witness {
            s.push_str(&format!("\n    witness: {w}"));
        }
        s
    }
}

/// A batch of check reports with a stable order and an exit-code policy.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SuiteReport {
    /// Schema tag for serialized reports.
    pub format: String,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub const FORMAT: &'static str = "audit-report/1";

    pub fn new() -> SuiteReport {
        SuiteReport {
            format: SuiteReport::FORMAT.to_string(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: CheckReport) {
        self.checks.push(check);
    }

    /// Merges another report in and re-sorts by check name, giving a
    /// deterministic order regardless of how checks were scheduled.
    pub fn merge(&mut self, other: SuiteReport) {
        self.checks.extend(other.checks);
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
    }

    pub fn count(&self, status: AuditStatus) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    /// Exit-code policy: any failure → 1; otherwise any inconclusive
    /// result → 2; otherwise 0. Skipped checks are listed but never move
    /// the code.
    pub fn exit_code(&self) -> i32 {
        if self.count(AuditStatus::Fail) > 0 {
            1
        } else if self.count(AuditStatus::Inconclusive) > 0 {
            2
        } else {
            0
        }
    }

    /// Full text rendering: one block per check plus a summary line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&c.line());
            out.push('\n');
        }
        out.push_str(&format!(
            "{} checks: {} passed, {} failed, {} inconclusive, {} skipped (exit {})\n",
            self.checks.len(),
            self.count(AuditStatus::Pass),
            self.count(AuditStatus::Fail),
            self.count(AuditStatus::Inconclusive),
            self.count(AuditStatus::SkippedUnimplementable),
            self.exit_code()
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_rank_failures_over_inconclusive() {
        let mut r = SuiteReport::new();
        assert_eq!(r.exit_code(), 0);
        r.push(CheckReport::pass("a", "fine"));
        assert_eq!(r.exit_code(), 0);
        r.push(CheckReport::skipped("b", "no finite procedure"));
        assert_eq!(r.exit_code(), 0);
        r.push(CheckReport::inconclusive("c", "oracle undecided", "iso: no; search: budget"));
        assert_eq!(r.exit_code(), 2);
        r.push(CheckReport::fail("d", "broken", "object #3"));
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn reports_round_trip_through_json() {
        let mut r = SuiteReport::new();
        r.push(
            CheckReport::fail("triangle", "composite differs from identity", "object Δ[1], cell 2")
                .with_param("seed", 7)
                .with_param("trunc", 2),
        );
        r.push(CheckReport::pass("exactness", "30/30 pairs in bijection"));
        let json = serde_json::to_string_pretty(&r).unwrap();
        let back: SuiteReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.format, SuiteReport::FORMAT);
        assert_eq!(back.checks.len(), 2);
        assert_eq!(back.checks[0].status, AuditStatus::Fail);
        assert_eq!(back.checks[0].witness.as_deref(), Some("object Δ[1], cell 2"));
        assert_eq!(back.checks[0].params["seed"], "7");
        assert_eq!(serde_json::to_string(&back).unwrap(), serde_json::to_string(&r).unwrap());
    }

    #[test]
    fn merge_orders_checks_by_name() {
        let mut a = SuiteReport::new();
        a.push(CheckReport::pass("zeta", ""));
        let mut b = SuiteReport::new();
        b.push(CheckReport::pass("alpha", ""));
        a.merge(b);
        let names: Vec<&str> = a.checks.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["alpha", "zeta"]);
    }
}
