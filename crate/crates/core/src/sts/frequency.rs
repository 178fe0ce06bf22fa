use super::special::{erfc, normal_cdf};
use super::{BitSequence, StsError, TestKind, TestResult};

const RECOMMENDED_MIN_BITS: usize = 100;

fn short_input_warning(n: usize) -> Option<String> {
    (n < RECOMMENDED_MIN_BITS)
        .then(|| format!("{n} bits is below the recommended minimum of {RECOMMENDED_MIN_BITS}"))
}

/// Monobit frequency test: `S = Σ(2ε−1)`, `p = erfc(|S| / √(2n))`.
pub fn frequency_test(seq: &BitSequence) -> Result<TestResult, StsError> {
    let n = seq.len();
    if n == 0 {
        return Err(StsError::EmptyInput);
    }
    let s = 2 * seq.count_ones() as i64 - n as i64;
    let p = erfc(s.unsigned_abs() as f64 / (2.0 * n as f64).sqrt());
    Ok(TestResult::new(TestKind::Frequency, vec![p]).with_warning(short_input_warning(n)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CusumMode {
    Forward,
    Backward,
}

/// Cumulative sums test in one direction; the result has one p-value.
pub fn cusum_test(seq: &BitSequence, mode: CusumMode) -> Result<TestResult, StsError> {
    let n = seq.len();
    if n == 0 {
        return Err(StsError::EmptyInput);
    }
    let p = cusum_p(seq, mode);
    Ok(TestResult::new(TestKind::CumulativeSums, vec![p]).with_warning(short_input_warning(n)))
}

/// Both directions: P1 forward, P2 backward.
pub fn cusum_pair(seq: &BitSequence) -> Result<TestResult, StsError> {
    let n = seq.len();
    if n == 0 {
        return Err(StsError::EmptyInput);
    }
    let p = vec![
        cusum_p(seq, CusumMode::Forward),
        cusum_p(seq, CusumMode::Backward),
    ];
    Ok(TestResult::new(TestKind::CumulativeSums, p).with_warning(short_input_warning(n)))
}

fn max_excursion(bits: impl Iterator<Item = bool>) -> i64 {
    let mut walk = 0i64;
    let mut z = 0i64;
    for b in bits {
        walk += if b { 1 } else { -1 };
        z = z.max(walk.abs());
    }
    z
}

fn cusum_p(seq: &BitSequence, mode: CusumMode) -> f64 {
    let n = seq.len() as i64;
    let z = match mode {
        CusumMode::Forward => max_excursion(seq.iter()),
        CusumMode::Backward => max_excursion(seq.iter().rev()),
    };
    let zf = z as f64;
    let sqrt_n = (n as f64).sqrt();
    // summation bounds use truncating integer division
    let mut sum1 = 0.0;
    for k in ((-n / z + 1) / 4)..=((n / z - 1) / 4) {
        let k = k as f64;
        sum1 +=
            normal_cdf((4.0 * k + 1.0) * zf / sqrt_n) - normal_cdf((4.0 * k - 1.0) * zf / sqrt_n);
    }
    let mut sum2 = 0.0;
    for k in ((-n / z - 3) / 4)..=((n / z - 1) / 4) {
        let k = k as f64;
        sum2 +=
            normal_cdf((4.0 * k + 3.0) * zf / sqrt_n) - normal_cdf((4.0 * k + 1.0) * zf / sqrt_n);
    }
    1.0 - sum1 + sum2
}
