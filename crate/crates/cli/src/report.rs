//! Machine-readable run reports.
//!
//! Timing lives in a separate field so reports can be compared byte-for-byte
//! across runs after normalization.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub name: String,
    pub status: Status,
    pub instances: usize,
    pub checks: usize,
    /// Failure witnesses; empty on pass.
    pub witnesses: Vec<String>,
}

impl Outcome {
    pub fn from_suite(report: &disjoint_kit::suites::SuiteReport) -> Self {
        Outcome {
            name: report.name.clone(),
            status: if report.passed() { Status::Pass } else { Status::Fail },
            instances: report.instances,
            checks: report.checks,
            witnesses: report.counterexamples.clone(),
        }
    }

    pub fn from_validation(name: &str, report: &disjoint_kit::fincat::ValidationReport) -> Self {
        Outcome {
            name: name.to_string(),
            status: if report.is_valid() { Status::Pass } else { Status::Fail },
            instances: 1,
            checks: report.checks,
            witnesses: report
                .violations
                .iter()
                .map(|v| format!("{} witnesses {:?}: {}", v.law, v.witnesses, v.detail))
                .collect(),
        }
    }

    pub fn pass(name: &str, checks: usize) -> Self {
        Outcome {
            name: name.to_string(),
            status: Status::Pass,
            instances: 1,
            checks,
            witnesses: Vec::new(),
        }
    }

    pub fn fail(name: &str, witness: String) -> Self {
        Outcome {
            name: name.to_string(),
            status: Status::Fail,
            instances: 1,
            checks: 0,
            witnesses: vec![witness],
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Timing {
    pub total_ms: u128,
    pub per_outcome_ms: Vec<(String, u128)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub passed: bool,
    pub outcomes: Vec<Outcome>,
    pub timing: Timing,
}

/// The normalized view: everything except timing, for byte-stable output.
#[derive(Serialize)]
struct NormalizedReport<'a> {
    suite: &'a str,
    passed: bool,
    outcomes: &'a [Outcome],
}

impl Report {
    pub fn new(suite: &str, outcomes: Vec<Outcome>, timing: Timing) -> Self {
        let passed = outcomes.iter().all(|o| o.status != Status::Fail);
        Report {
            suite: suite.to_string(),
            passed,
            outcomes,
            timing,
        }
    }

    pub fn normalized_json(&self) -> String {
        serde_json::to_string_pretty(&NormalizedReport {
            suite: &self.suite,
            passed: self.passed,
            outcomes: &self.outcomes,
        })
        .expect("report serializes")
    }

    pub fn full_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for o in &self.outcomes {
            let mark = match o.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            out.push_str(&format!(
                "[{mark}] {} (instances: {}, checks: {})\n",
                o.name, o.instances, o.checks
            ));
            for w in o.witnesses.iter().take(8) {
                out.push_str(&format!("       witness: {w}\n"));
            }
        }
        out.push_str(&format!(
            "{}: {} in {} ms\n",
            self.suite,
            if self.passed { "all checks passed" } else { "FAILURES present" },
            self.timing.total_ms
        ));
        out
    }
}
