//! Structured pass/fail records for the verification suites.

use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One verified case: the identity checked, term counts for both sides, and
/// on failure a bounded sample of mismatching monomials.
#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub id: String,
    pub status: Status,
    /// Human-readable statement of the identity the case checks.
    pub anchor: String,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<String>,
}

impl CaseReport {
    pub fn pass(id: impl Into<String>, anchor: impl Into<String>, lhs: usize, rhs: usize) -> Self {
        CaseReport {
            id: id.into(),
            status: Status::Pass,
            anchor: anchor.into(),
            lhs_terms: lhs,
            rhs_terms: rhs,
            mismatch: None,
        }
    }

    pub fn fail(
        id: impl Into<String>,
        anchor: impl Into<String>,
        lhs: usize,
        rhs: usize,
        mismatch: impl Into<String>,
    ) -> Self {
        CaseReport {
            id: id.into(),
            status: Status::Fail,
            anchor: anchor.into(),
            lhs_terms: lhs,
            rhs_terms: rhs,
            mismatch: Some(mismatch.into()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<u32>,
    pub elapsed_ms: u128,
    /// Suite-level notes, e.g. which notational reading an oracle confirmed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseReport>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn new(
        suite: impl Into<String>,
        cases: Vec<CaseReport>,
        seed: u64,
        max_degree: Option<u32>,
        cutoff: Option<u32>,
        elapsed_ms: u128,
        detail: Option<String>,
    ) -> Self {
        let passed = cases.iter().filter(|c| c.status == Status::Pass).count();
        let failed = cases.iter().filter(|c| c.status == Status::Fail).count();
        let skipped = cases.iter().filter(|c| c.status == Status::Skipped).count();
        SuiteReport {
            suite: suite.into(),
            summary: Summary {
                total: cases.len(),
                passed,
                failed,
                skipped,
                seed,
                max_degree,
                cutoff,
                elapsed_ms,
                detail,
            },
            cases,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with the timing field zeroed, for byte-identity comparisons.
    pub fn to_json_without_timing(&self) -> String {
        let mut clone = self.clone();
        clone.summary.elapsed_ms = 0;
        serde_json::to_string_pretty(&clone).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("suite {}\n", self.suite));
        for c in &self.cases {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            out.push_str(&format!(
                "  [{status}] {} — {} (lhs {} terms, rhs {} terms)\n",
                c.id, c.anchor, c.lhs_terms, c.rhs_terms
            ));
            if let Some(m) = &c.mismatch {
                out.push_str(&format!("         mismatch: {m}\n"));
            }
        }
        if let Some(d) = &self.summary.detail {
            out.push_str(&format!("  note: {d}\n"));
        }
        out.push_str(&format!(
            "  {} cases: {} passed, {} failed, {} skipped ({} ms, seed {})\n",
            self.summary.total,
            self.summary.passed,
            self.summary.failed,
            self.summary.skipped,
            self.summary.elapsed_ms,
            self.summary.seed,
        ));
        out
    }
}
