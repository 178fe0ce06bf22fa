//! Built-in cross-validation checks, each comparing an implementation
//! against an independent model of the same object.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::a51::majority;
use crate::bitseq::BitSequence;
use crate::sts::berlekamp_massey;
use crate::trivium::matrix::MatrixStepper;
use crate::trivium::{Gf2Vector, TriviumIv, TriviumKey, TriviumParams, TriviumState};

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {}: {}", self.name, self.detail)
    }
}

/// Sizes used by [`run_all`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub matrix_states: usize,
    pub matrix_steps: usize,
    pub bm_length: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            matrix_states: 100,
            matrix_steps: 10_000,
            bm_length: 12,
        }
    }
}

pub fn run_all(config: &VerifyConfig) -> Vec<Check> {
    vec![
        matrix_equivalence(config.matrix_states, config.matrix_steps, config.seed),
        majority_truth_table(),
        berlekamp_massey_exhaustive(config.bm_length),
    ]
}

/// Random key/IV loads stepped by both the shift-register implementation
/// and `z ↦ A·z + b(z)`, comparing all 288 bits after every step.
pub fn matrix_equivalence(states: usize, steps: usize, seed: u64) -> Check {
    let stepper = MatrixStepper::new(TriviumParams::STANDARD).expect("standard parameters");
    let mismatches: usize = (0..states)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha20Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let key: Vec<bool> = (0..80).map(|_| rng.random()).collect();
            let iv: Vec<bool> = (0..80).map(|_| rng.random()).collect();
            let mut direct = TriviumState::load(
                &TriviumKey::from_bits(&key).expect("80 bits"),
                &TriviumIv::from_bits(&iv).expect("80 bits"),
            );
            let mut z = Gf2Vector::from_bits(&direct.to_bits());
            let mut bad = 0;
            for _ in 0..steps {
                direct.clock();
                z = stepper.step(&z);
                let expected = Gf2Vector::from_bits(&direct.to_bits());
                if z != expected {
                    bad += 1;
                    z = expected;
                }
            }
            bad
        })
        .sum();
    Check {
        name: "trivium matrix form",
        passed: mismatches == 0,
        detail: format!("{states} states x {steps} steps, {mismatches} mismatches"),
    }
}

/// `majority` against "at least two of three inputs set" on all 8 inputs.
pub fn majority_truth_table() -> Check {
    let wrong: Vec<u8> = (0u8..8)
        .filter(|&x| {
            let (l, m, n) = (x & 4 != 0, x & 2 != 0, x & 1 != 0);
            majority(l, m, n) != (x.count_ones() >= 2)
        })
        .collect();
    Check {
        name: "majority truth table",
        passed: wrong.is_empty(),
        detail: if wrong.is_empty() {
            "8/8 inputs".to_owned()
        } else {
            format!("wrong on inputs {wrong:?}")
        },
    }
}

/// Berlekamp–Massey against [`minimal_lfsr_length`] on every sequence of
/// `len` bits.
pub fn berlekamp_massey_exhaustive(len: usize) -> Check {
    assert!(
        (1..=20).contains(&len),
        "exhaustive length must be in 1..=20"
    );
    let disagreements = (0u32..1 << len)
        .into_par_iter()
        .filter(|&x| {
            let bits: Vec<bool> = (0..len).map(|i| (x >> i) & 1 == 1).collect();
            let fast = berlekamp_massey(&BitSequence::from(bits.clone())).expect("non-empty");
            fast != minimal_lfsr_length(&bits)
        })
        .count();
    Check {
        name: "berlekamp-massey vs exhaustive search",
        passed: disagreements == 0,
        detail: format!(
            "{} sequences of length {len}, {disagreements} disagreements",
            1u32 << len
        ),
    }
}

/// Smallest `L` for which some connection polynomial `c1..cL` satisfies
/// `s[i] = c1·s[i-1] ⊕ … ⊕ cL·s[i-L]` for all `i ≥ L`, found by trying
/// every polynomial in order of length. Exponential; short inputs only.
pub fn minimal_lfsr_length(s: &[bool]) -> usize {
    let n = s.len();
    assert!(n <= 24, "exhaustive search is limited to 24 bits");
    (0..=n)
        .find(|&l| {
            (0u32..1 << l).any(|c| {
                (l..n).all(|i| {
                    let predicted =
                        (1..=l).fold(false, |acc, j| acc ^ ((c >> (j - 1)) & 1 == 1 && s[i - j]));
                    predicted == s[i]
                })
            })
        })
        .expect("L = n always works")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_small_cases() {
        assert_eq!(minimal_lfsr_length(&[]), 0);
        assert_eq!(minimal_lfsr_length(&[false, false, false]), 0);
        assert_eq!(minimal_lfsr_length(&[true, false, false, false]), 1);
        assert_eq!(minimal_lfsr_length(&[false, false, false, true]), 4);
        assert_eq!(minimal_lfsr_length(&[true, true, true, true]), 1);
        assert_eq!(minimal_lfsr_length(&[true, false, true, false, true]), 2);
    }

    #[test]
    fn all_checks_pass_at_small_sizes() {
        let config = VerifyConfig {
            seed: 7,
            matrix_states: 3,
            matrix_steps: 2000,
            bm_length: 10,
        };
        for check in run_all(&config) {
            assert!(check.passed, "{check}");
        }
    }

    #[test]
    fn display_names_each_check() {
        let c = majority_truth_table();
        assert_eq!(c.to_string(), "[PASS] majority truth table: 8/8 inputs");
    }
}
