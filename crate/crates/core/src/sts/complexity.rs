//! Berlekamp–Massey over GF(2) and the block linear-complexity test.

use super::special::igamc;
use super::{BitSequence, StsError, TestKind, TestResult};

/// Limiting probabilities of the seven T-statistic categories
/// (1/96, 1/32, 1/8, 1/2, 1/4, 1/16, 1/48).
pub const LC_CATEGORY_PROBABILITIES: [f64; 7] = [
    1.0 / 96.0,
    1.0 / 32.0,
    1.0 / 8.0,
    1.0 / 2.0,
    1.0 / 4.0,
    1.0 / 16.0,
    1.0 / 48.0,
];

pub const LC_BLOCK_RANGE: std::ops::RangeInclusive<usize> = 500..=5000;
pub const LC_MIN_BLOCKS: usize = 200;

/// Length of the shortest LFSR generating `seq`.
pub fn berlekamp_massey(seq: &BitSequence) -> Result<usize, StsError> {
    if seq.is_empty() {
        return Err(StsError::EmptyInput);
    }
    Ok(linear_complexity(seq.as_slice()))
}

/// Berlekamp–Massey on packed words.
///
/// The sequence is stored reversed (`rev` bit `j` = `s[n-1-j]`), so the
/// discrepancy `Σ c_i s[N-i]` is a word-wise AND of the connection
/// polynomial with `rev` read from bit offset `n-1-N`.
pub(crate) fn linear_complexity(bits: &[bool]) -> usize {
    let n = bits.len();
    let words = n / 64 + 2;
    let mut rev = vec![0u64; words + 1];
    for (i, &b) in bits.iter().enumerate() {
        if b {
            let j = n - 1 - i;
            rev[j / 64] |= 1 << (j % 64);
        }
    }
    let mut c = vec![0u64; words];
    let mut b = vec![0u64; words];
    let mut scratch = vec![0u64; words];
    c[0] = 1;
    b[0] = 1;
    let mut len = 0usize;
    let mut shift = 1usize;

    for step in 0..n {
        // coefficients of C live in bits 0..=step
        let active = step / 64 + 1;
        let offset = n - 1 - step;
        let mut acc = 0u64;
        for (w, &cw) in c[..active].iter().enumerate() {
            acc ^= cw & window(&rev, offset + 64 * w);
        }
        if acc.count_ones() & 1 == 1 {
            scratch.copy_from_slice(&c);
            xor_shifted(&mut c, &b, shift, active);
            if 2 * len <= step {
                len = step + 1 - len;
                std::mem::swap(&mut b, &mut scratch);
                shift = 1;
            } else {
                shift += 1;
            }
        } else {
            shift += 1;
        }
    }
    len
}

/// 64 bits of `words` starting at bit `pos`.
#[inline]
fn window(words: &[u64], pos: usize) -> u64 {
    let (w, s) = (pos / 64, pos % 64);
    if w >= words.len() {
        return 0;
    }
    let lo = words[w] >> s;
    if s == 0 || w + 1 >= words.len() {
        lo
    } else {
        lo | (words[w + 1] << (64 - s))
    }
}

/// `c ^= b << shift`, touching only words that can be non-zero.
#[inline]
fn xor_shifted(c: &mut [u64], b: &[u64], shift: usize, active: usize) {
    let (ws, bs) = (shift / 64, shift % 64);
    for w in 0..active.min(b.len()) {
        let v = b[w];
        if v == 0 {
            continue;
        }
        if w + ws < c.len() {
            c[w + ws] ^= v << bs;
        }
        if bs != 0 && w + ws + 1 < c.len() {
            c[w + ws + 1] ^= v >> (64 - bs);
        }
    }
}

/// Linear complexity test with block size `M` in `500..=5000` and at least
/// 200 blocks.
pub fn linear_complexity_test(seq: &BitSequence, block: usize) -> Result<TestResult, StsError> {
    let n = seq.len();
    if n == 0 {
        return Err(StsError::EmptyInput);
    }
    if !LC_BLOCK_RANGE.contains(&block) {
        return Err(StsError::Parameter(format!(
            "linear complexity block size {block} outside {}..={}",
            LC_BLOCK_RANGE.start(),
            LC_BLOCK_RANGE.end()
        )));
    }
    let blocks = n / block;
    if blocks < LC_MIN_BLOCKS {
        return Err(StsError::Parameter(format!(
            "{blocks} blocks of {block} bits; at least {LC_MIN_BLOCKS} are needed ({} bits)",
            LC_MIN_BLOCKS * block
        )));
    }
    let m = block as f64;
    let sign = if block.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mu = m / 2.0 + (9.0 - sign) / 36.0 - (m / 3.0 + 2.0 / 9.0) / 2f64.powf(m);
    let mut nu = [0u64; 7];
    for chunk in seq.as_slice().chunks_exact(block) {
        let l = linear_complexity(chunk) as f64;
        let t = sign * (l - mu) + 2.0 / 9.0;
        let category = match t {
            t if t <= -2.5 => 0,
            t if t <= -1.5 => 1,
            t if t <= -0.5 => 2,
            t if t <= 0.5 => 3,
            t if t <= 1.5 => 4,
            t if t <= 2.5 => 5,
            _ => 6,
        };
        nu[category] += 1;
    }
    let chi2: f64 = nu
        .iter()
        .zip(LC_CATEGORY_PROBABILITIES)
        .map(|(&v, p)| {
            let expected = blocks as f64 * p;
            (v as f64 - expected).powi(2) / expected
        })
        .sum();
    let p = igamc(3.0, chi2 / 2.0)?;
    Ok(TestResult::new(TestKind::LinearComplexity, vec![p])
        .with_param("M", block as u64)
        .with_param("N", blocks as u64))
}
