#![allow(dead_code)]

use cozmo_core::BitSequence;

/// SplitMix64 bit stream: each output word contributes its bits from the
/// most significant down. Matches `splitmix_bits` in the oracle script.
pub fn splitmix_bits(seed: u64, n: usize) -> BitSequence {
    let mut state = seed;
    let mut out = BitSequence::with_capacity(n);
    while out.len() < n {
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        for j in 0..64.min(n - out.len()) {
            out.push((z >> (63 - j)) & 1 == 1);
        }
    }
    out
}

/// Shortest LFSR length by trying every connection polynomial of each
/// length in turn.
pub fn brute_force_linear_complexity(s: &[bool]) -> usize {
    let n = s.len();
    for len in 0..=n {
        for taps in 0u32..(1 << len) {
            let generates = (len..n).all(|i| {
                let mut bit = false;
                for j in 0..len {
                    if taps >> j & 1 == 1 {
                        bit ^= s[i - 1 - j];
                    }
                }
                bit == s[i]
            });
            if generates {
                return len;
            }
        }
    }
    unreachable!("length n always generates")
}

pub fn fixture_path(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}
