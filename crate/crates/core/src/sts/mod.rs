//! Seven statistical randomness tests in the NIST SP 800-22 formulation,
//! plus a battery runner that reports them in a fixed row order.
//!
//! Every test is a pure function of a [`BitSequence`] and its parameters
//! and returns a [`TestResult`] carrying one or two p-values. Whether a
//! result passes is decided later against a significance level `alpha`,
//! see [`TestResult::verdict`].

mod battery;
mod complexity;
mod frequency;
mod patterns;
mod runs;
pub mod special;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use battery::{run_battery, BatteryConfig, InputDigest, ReportRow, TestReport};
pub use complexity::{berlekamp_massey, linear_complexity_test, LC_CATEGORY_PROBABILITIES};
pub use frequency::{cusum_pair, cusum_test, frequency_test, CusumMode};
pub use patterns::{approx_entropy_test, serial_test};
pub use runs::{longest_run_test, runs_test};
pub use special::{erfc, igamc};

pub use crate::bitseq::BitSequence;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StsError {
    #[error("empty input sequence")]
    EmptyInput,
    #[error("input too short: need at least {needed} bits, got {actual}")]
    TooShort { needed: usize, actual: usize },
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("domain error in {0}")]
    Domain(String),
    #[error("no convergence in {0}")]
    NoConvergence(String),
}

/// The seven tests, in report row order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestKind {
    Frequency,
    CumulativeSums,
    ApproximateEntropy,
    LinearComplexity,
    Serial,
    LongestRunOfOnes,
    Runs,
}

impl TestKind {
    pub const REPORT_ORDER: [TestKind; 7] = [
        TestKind::Frequency,
        TestKind::CumulativeSums,
        TestKind::ApproximateEntropy,
        TestKind::LinearComplexity,
        TestKind::Serial,
        TestKind::LongestRunOfOnes,
        TestKind::Runs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TestKind::Frequency => "Frequency",
            TestKind::CumulativeSums => "Cumulative Sums",
            TestKind::ApproximateEntropy => "Approximate Entropy",
            TestKind::LinearComplexity => "Linear Complexity",
            TestKind::Serial => "Serial",
            TestKind::LongestRunOfOnes => "Longest Run of Ones",
            TestKind::Runs => "Runs",
        }
    }

    /// Number of p-values a completed test of this kind reports.
    pub fn arity(self) -> usize {
        match self {
            TestKind::CumulativeSums | TestKind::Serial => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for TestKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A probability in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PValue(f64);

impl PValue {
    /// Clamps into `[0, 1]`; rounding in the tail formulas can stray a few
    /// ulps outside.
    ///
    /// # Panics
    /// On NaN.
    pub fn new(v: f64) -> Self {
        assert!(!v.is_nan(), "p-value is NaN");
        Self(v.clamp(0.0, 1.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    /// The word used in the text report.
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "Success",
            Verdict::Fail => "Failure",
            Verdict::NotApplicable => "Not applicable",
        }
    }
}

/// Outcome of one test on one sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct TestResult {
    pub test: TestKind,
    /// Empty when the test was not applicable.
    pub pvalues: Vec<PValue>,
    /// Why the test could not be evaluated, if it could not.
    pub not_applicable: Option<String>,
    /// Recommendations the input or parameters fell short of.
    pub warnings: Vec<String>,
    /// Parameters actually used (block sizes, block counts, ...).
    pub params: BTreeMap<String, u64>,
}

impl TestResult {
    fn new(test: TestKind, pvalues: Vec<f64>) -> Self {
        Self {
            test,
            pvalues: pvalues.into_iter().map(PValue::new).collect(),
            not_applicable: None,
            warnings: Vec::new(),
            params: BTreeMap::new(),
        }
    }

    fn not_applicable(test: TestKind, reason: impl Into<String>) -> Self {
        Self {
            test,
            pvalues: Vec::new(),
            not_applicable: Some(reason.into()),
            warnings: Vec::new(),
            params: BTreeMap::new(),
        }
    }

    fn with_param(mut self, key: &str, value: u64) -> Self {
        self.params.insert(key.to_owned(), value);
        self
    }

    fn with_warning(mut self, warning: Option<String>) -> Self {
        self.warnings.extend(warning);
        self
    }

    pub fn is_applicable(&self) -> bool {
        self.not_applicable.is_none()
    }

    /// Pass iff every p-value is at least `alpha`.
    pub fn verdict(&self, alpha: f64) -> Verdict {
        if !self.is_applicable() {
            Verdict::NotApplicable
        } else if self.pvalues.iter().all(|p| p.value() >= alpha) {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn p(&self, i: usize) -> f64 {
        self.pvalues[i].value()
    }
}

/// `0 ↔ 1` flipped copy, used by several symmetry checks.
#[cfg(test)]
pub(crate) fn complement(seq: &BitSequence) -> BitSequence {
    seq.iter().map(|b| !b).collect()
}
