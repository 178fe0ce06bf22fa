use super::special::{erfc, igamc};
use super::{BitSequence, StsError, TestKind, TestResult};

/// Runs test. Not applicable when the proportion of ones `π` is too far
/// from one half, `|π − ½| ≥ 2/√n`.
pub fn runs_test(seq: &BitSequence) -> Result<TestResult, StsError> {
    let n = seq.len();
    if n == 0 {
        return Err(StsError::EmptyInput);
    }
    let nf = n as f64;
    let pi = seq.count_ones() as f64 / nf;
    let tau = 2.0 / nf.sqrt();
    if (pi - 0.5).abs() >= tau {
        return Ok(TestResult::not_applicable(
            TestKind::Runs,
            format!(
                "frequency prerequisite failed: |pi - 1/2| = {:.6} >= {tau:.6}",
                (pi - 0.5).abs()
            ),
        ));
    }
    let bits = seq.as_slice();
    let runs = 1 + bits.windows(2).filter(|w| w[0] != w[1]).count();
    let expected = 2.0 * nf * pi * (1.0 - pi);
    let p = erfc((runs as f64 - expected).abs() / (2.0 * (2.0 * nf).sqrt() * pi * (1.0 - pi)));
    Ok(TestResult::new(TestKind::Runs, vec![p]).with_param("runs", runs as u64))
}

/// Block size, category bounds and category probabilities for one regime.
struct LongestRunTable {
    block: usize,
    /// Longest run mapped to category 0 (and everything shorter).
    lowest: usize,
    pi: &'static [f64],
}

const LONGEST_RUN_TABLES: [(usize, LongestRunTable); 3] = [
    (
        128,
        LongestRunTable {
            block: 8,
            lowest: 1,
            pi: &[0.21484375, 0.3671875, 0.23046875, 0.1875],
        },
    ),
    (
        6272,
        LongestRunTable {
            block: 128,
            lowest: 4,
            pi: &[
                0.1174035788,
                0.242955959,
                0.249363483,
                0.17517706,
                0.102701071,
                0.112398847,
            ],
        },
    ),
    (
        750_000,
        LongestRunTable {
            block: 10_000,
            lowest: 10,
            pi: &[0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727],
        },
    ),
];

pub const LONGEST_RUN_MIN_BITS: usize = 128;

/// Longest run of ones within blocks. The block size follows the input
/// length: 8 from 128 bits, 128 from 6272 bits, 10⁴ from 750 000 bits.
pub fn longest_run_test(seq: &BitSequence) -> Result<TestResult, StsError> {
    let n = seq.len();
    if n < LONGEST_RUN_MIN_BITS {
        return Err(StsError::TooShort {
            needed: LONGEST_RUN_MIN_BITS,
            actual: n,
        });
    }
    let table = &LONGEST_RUN_TABLES
        .iter()
        .rev()
        .find(|(min, _)| n >= *min)
        .expect("n >= 128")
        .1;
    let k = table.pi.len() - 1;
    let blocks = n / table.block;
    let mut nu = vec![0u64; k + 1];
    for block in seq.as_slice().chunks_exact(table.block) {
        let (mut best, mut run) = (0usize, 0usize);
        for &b in block {
            run = if b { run + 1 } else { 0 };
            best = best.max(run);
        }
        nu[best.saturating_sub(table.lowest).min(k)] += 1;
    }
    let chi2: f64 = nu
        .iter()
        .zip(table.pi)
        .map(|(&v, &p)| {
            let expected = blocks as f64 * p;
            (v as f64 - expected).powi(2) / expected
        })
        .sum();
    let p = igamc(k as f64 / 2.0, chi2 / 2.0)?;
    Ok(TestResult::new(TestKind::LongestRunOfOnes, vec![p])
        .with_param("M", table.block as u64)
        .with_param("K", k as u64)
        .with_param("N", blocks as u64))
}
