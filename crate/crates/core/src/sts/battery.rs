use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{
    approx_entropy_test, cusum_pair, frequency_test, linear_complexity_test, longest_run_test,
    runs_test, serial_test, BitSequence, StsError, TestKind, TestResult, Verdict,
};
use crate::bitseq::{encode_hex, BitOrder};

/// Battery parameters. Defaults: `alpha = 0.01`, 10⁶-bit sequences,
/// serial `m = 16`, approximate entropy `m = 10`, linear complexity
/// `M = 500`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BatteryConfig {
    pub alpha: f64,
    /// Length generated when the battery is fed from a cipher.
    pub sequence_length: usize,
    pub serial_block_len: usize,
    pub apen_block_len: usize,
    pub lincomp_block_size: usize,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        Self {
            alpha: 0.01,
            sequence_length: 1_000_000,
            serial_block_len: 16,
            apen_block_len: 10,
            lincomp_block_size: 500,
        }
    }
}

impl BatteryConfig {
    pub fn validate(&self) -> Result<(), StsError> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(StsError::Parameter(format!(
                "alpha must lie strictly between 0 and 1, got {}",
                self.alpha
            )));
        }
        Ok(())
    }

    fn run(&self, kind: TestKind, seq: &BitSequence) -> Result<TestResult, StsError> {
        match kind {
            TestKind::Frequency => frequency_test(seq),
            TestKind::CumulativeSums => cusum_pair(seq),
            TestKind::ApproximateEntropy => approx_entropy_test(seq, self.apen_block_len),
            TestKind::LinearComplexity => linear_complexity_test(seq, self.lincomp_block_size),
            TestKind::Serial => serial_test(seq, self.serial_block_len),
            TestKind::LongestRunOfOnes => longest_run_test(seq),
            TestKind::Runs => runs_test(seq),
        }
    }
}

/// Identifies the tested input: its length and the SHA-256 of its bits
/// packed most-significant-bit first (last byte zero padded).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub bits: usize,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(seq: &BitSequence) -> Self {
        let hash = Sha256::digest(seq.to_bytes(BitOrder::MsbFirst));
        Self {
            bits: seq.len(),
            sha256: encode_hex(&hash).to_lowercase(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub test: TestKind,
    pub name: String,
    pub pvalues: Vec<f64>,
    pub verdict: Verdict,
    pub params: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl ReportRow {
    fn from_outcome(kind: TestKind, outcome: Result<TestResult, StsError>, alpha: f64) -> Self {
        match outcome {
            Ok(result) => Self {
                test: kind,
                name: kind.name().to_owned(),
                pvalues: result.pvalues.iter().map(|p| p.value()).collect(),
                verdict: result.verdict(alpha),
                params: result.params,
                note: result.not_applicable,
                warnings: result.warnings,
            },
            Err(e) => Self {
                test: kind,
                name: kind.name().to_owned(),
                pvalues: Vec::new(),
                verdict: Verdict::NotApplicable,
                params: BTreeMap::new(),
                note: Some(e.to_string()),
                warnings: Vec::new(),
            },
        }
    }
}

/// Seven rows in fixed order, the configuration used and the input digest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestReport {
    pub alpha: f64,
    pub config: BatteryConfig,
    pub input: InputDigest,
    pub overall: Verdict,
    pub tests: Vec<ReportRow>,
}

/// Runs all seven tests. Rows that cannot be evaluated (input too short,
/// prerequisite failed, parameters out of range) are marked not
/// applicable; the overall verdict passes iff every applicable row passes.
pub fn run_battery(seq: &BitSequence, config: &BatteryConfig) -> Result<TestReport, StsError> {
    config.validate()?;
    let tests: Vec<ReportRow> = TestKind::REPORT_ORDER
        .par_iter()
        .map(|&kind| ReportRow::from_outcome(kind, config.run(kind, seq), config.alpha))
        .collect();
    let overall = if tests.iter().any(|r| r.verdict == Verdict::Fail) {
        Verdict::Fail
    } else {
        Verdict::Pass
    };
    Ok(TestReport {
        alpha: config.alpha,
        config: *config,
        input: InputDigest::of(seq),
        overall,
        tests,
    })
}

impl TestReport {
    pub fn passed(&self) -> bool {
        self.overall == Verdict::Pass
    }

    pub fn row(&self, kind: TestKind) -> &ReportRow {
        self.tests
            .iter()
            .find(|r| r.test == kind)
            .expect("every report carries all seven rows")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Three-column table: test, p-value(s), verdict.
    pub fn to_text_table(&self) -> String {
        let cells: Vec<(String, String, String)> = self
            .tests
            .iter()
            .map(|row| {
                let p = match row.pvalues.as_slice() {
                    [] => "-".to_owned(),
                    [p] => format!("{p:.6}"),
                    ps => ps
                        .iter()
                        .enumerate()
                        .map(|(i, p)| format!("P{}-{p:.6}", i + 1))
                        .collect::<Vec<_>>()
                        .join(" "),
                };
                (row.name.clone(), p, row.verdict.label().to_owned())
            })
            .collect();
        let header = ("Statistical Test", "p-value", "Success/failure");
        let w0 = cells
            .iter()
            .map(|c| c.0.len())
            .chain([header.0.len()])
            .max()
            .unwrap_or(0);
        let w1 = cells
            .iter()
            .map(|c| c.1.len())
            .chain([header.1.len()])
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        let _ = writeln!(out, "{:<w0$}  {:<w1$}  {}", header.0, header.1, header.2);
        for (name, p, verdict) in &cells {
            let _ = writeln!(out, "{name:<w0$}  {p:<w1$}  {verdict}");
        }
        let _ = writeln!(
            out,
            "\n{} bits, sha256 {}, alpha = {}: {}",
            self.input.bits,
            self.input.sha256,
            self.alpha,
            if self.passed() {
                "all applicable tests passed"
            } else {
                "FAILED"
            }
        );
        for row in self.tests.iter() {
            if let Some(note) = &row.note {
                let _ = writeln!(out, "  {}: {note}", row.name);
            }
        }
        out
    }
}
