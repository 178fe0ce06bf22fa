//! Overlapping-pattern tests. Windows wrap around the end of the sequence,
//! so an `n`-bit input always yields exactly `n` windows of every length.

use std::f64::consts::LN_2;

use super::special::igamc;
use super::{BitSequence, StsError, TestKind, TestResult};

/// Largest window the counters will allocate for (2^25 counters).
const MAX_WINDOW: usize = 25;

/// Counts of every cyclic `m`-bit window, indexed by the window read
/// first-bit-most-significant.
fn cyclic_counts(bits: &[bool], m: usize) -> Vec<u32> {
    let n = bits.len();
    let mut counts = vec![0u32; 1 << m];
    if m == 0 {
        counts[0] = n as u32;
        return counts;
    }
    let mask = (1usize << m) - 1;
    let mut idx = 0usize;
    for &b in &bits[..m - 1] {
        idx = (idx << 1) | b as usize;
    }
    for i in 0..n {
        let b = bits[(i + m - 1) % n];
        idx = ((idx << 1) | b as usize) & mask;
        counts[idx] += 1;
    }
    counts
}

/// Counts for windows one bit shorter: every cyclic window of length `m`
/// starts with exactly one window of length `m - 1`.
fn shorten(counts: &[u32]) -> Vec<u32> {
    counts.chunks(2).map(|pair| pair[0] + pair[1]).collect()
}

fn check_window(m: usize, min: usize, n: usize) -> Result<(), StsError> {
    if n == 0 {
        return Err(StsError::EmptyInput);
    }
    if m < min {
        return Err(StsError::Parameter(format!(
            "block length {m} is below {min}"
        )));
    }
    if m > MAX_WINDOW || m >= n {
        return Err(StsError::Parameter(format!(
            "block length {m} too large for a {n}-bit sequence (limit {})",
            MAX_WINDOW.min(n.saturating_sub(1))
        )));
    }
    Ok(())
}

fn recommendation(m: usize, n: usize, slack: f64) -> Option<String> {
    let bound = (n as f64).log2() - slack;
    ((m as f64) >= bound)
        .then(|| format!("block length {m} should be below log2(n) - {slack} = {bound:.2}"))
}

/// Approximate entropy test with block length `m ≥ 1`.
pub fn approx_entropy_test(seq: &BitSequence, m: usize) -> Result<TestResult, StsError> {
    let n = seq.len();
    check_window(m + 1, 2, n)?;
    let longer = cyclic_counts(seq.as_slice(), m + 1);
    let shorter = shorten(&longer);
    let phi = |counts: &[u32]| -> f64 {
        counts
            .iter()
            .filter(|&&c| c > 0)
            .map(|&c| {
                let p = c as f64 / n as f64;
                p * p.ln()
            })
            .sum()
    };
    let apen = phi(&shorter) - phi(&longer);
    let chi2 = 2.0 * n as f64 * (LN_2 - apen);
    let p = igamc((1u64 << (m - 1)) as f64, chi2 / 2.0)?;
    Ok(TestResult::new(TestKind::ApproximateEntropy, vec![p])
        .with_param("m", m as u64)
        .with_warning(recommendation(m, n, 4.0)))
}

/// Serial test with block length `m ≥ 2`; P1 from `∇ψ²_m`, P2 from `∇²ψ²_m`.
pub fn serial_test(seq: &BitSequence, m: usize) -> Result<TestResult, StsError> {
    let n = seq.len();
    check_window(m, 2, n)?;
    let c_m = cyclic_counts(seq.as_slice(), m);
    let c_m1 = shorten(&c_m);
    let c_m2 = shorten(&c_m1);
    let psi2 = |counts: &[u32]| -> f64 {
        let sum_sq: f64 = counts.iter().map(|&c| (c as f64) * (c as f64)).sum();
        counts.len() as f64 / n as f64 * sum_sq - n as f64
    };
    let (psi_m, psi_m1, psi_m2) = (psi2(&c_m), psi2(&c_m1), psi2(&c_m2));
    let del1 = psi_m - psi_m1;
    let del2 = psi_m - 2.0 * psi_m1 + psi_m2;
    let p1 = igamc((1u64 << (m - 1)) as f64 / 2.0, del1 / 2.0)?;
    let p2 = igamc((1u64 << (m - 2)) as f64 / 2.0, del2 / 2.0)?;
    Ok(TestResult::new(TestKind::Serial, vec![p1, p2])
        .with_param("m", m as u64)
        .with_warning(recommendation(m, n, 2.0)))
}
