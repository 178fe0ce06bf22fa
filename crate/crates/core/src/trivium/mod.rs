//! Trivium: three interconnected nonlinear feedback shift registers
//! holding 288 state bits `s1..s288`, an 80-bit key and an 80-bit IV.
//!
//! The state lives in three `u128` words, one per register, with bit
//! `k` of each word holding the `k`-th cell of that register:
//!
//! | word | cells         | length |
//! |------|---------------|--------|
//! | `a`  | `s1..s93`     | 93     |
//! | `b`  | `s94..s177`   | 84     |
//! | `c`  | `s178..s288`  | 111    |
//!
//! [`matrix`] holds an independent linear-algebra model of the same update
//! used to cross-check this one.

pub mod matrix;

use crate::bitseq::{parse_key_bits, BitSequence, KeyLayout};
use crate::error::{Error, Result};

pub use matrix::{Gf2Matrix, Gf2Vector, TriviumParams};

pub const KEY_BITS: usize = 80;
pub const IV_BITS: usize = 80;
pub const STATE_BITS: usize = 288;
/// Clocks applied after loading before the first keystream bit.
pub const WARMUP_CLOCKS: u64 = 1152;

const LEN_A: u32 = 93;
const LEN_B: u32 = 84;
const LEN_C: u32 = 111;
const MASK_A: u128 = (1 << LEN_A) - 1;
const MASK_B: u128 = (1 << LEN_B) - 1;
const MASK_C: u128 = (1 << LEN_C) - 1;

macro_rules! key_type {
    ($name:ident, $bits:expr, $what:literal) => {
        #[doc = concat!("An ", $what, ": bits `1..=", stringify!($bits), "` in loading order.")]
        #[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
        pub struct $name([bool; $bits]);

        impl $name {
            pub fn from_bits(bits: &[bool]) -> Result<Self> {
                let arr: [bool; $bits] = bits.try_into().map_err(|_| Error::WrongLength {
                    expected: $bits,
                    actual: bits.len(),
                })?;
                Ok(Self(arr))
            }

            pub fn from_sequence(seq: &BitSequence) -> Result<Self> {
                Self::from_bits(seq.as_slice())
            }

            /// Parses 20 hex digits, first bit = MSB of the first byte.
            pub fn from_hex(text: &str) -> Result<Self> {
                Self::from_hex_layout(text, KeyLayout::Msb)
            }

            pub fn from_hex_layout(text: &str, layout: KeyLayout) -> Result<Self> {
                Self::from_sequence(&parse_key_bits(text, layout, $bits)?)
            }

            pub fn bits(&self) -> &[bool; $bits] {
                &self.0
            }
        }
    };
}

key_type!(TriviumKey, KEY_BITS, "80-bit Trivium key");
key_type!(TriviumIv, IV_BITS, "80-bit Trivium IV");

/// The 288-bit Trivium state together with the number of clocks applied
/// since it was loaded.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct TriviumState {
    a: u128,
    b: u128,
    c: u128,
    clocks: u64,
}

impl TriviumState {
    /// Loads key and IV: `s1..s80 = K`, `s94..s173 = IV`, `s286..s288 = 1`,
    /// everything else zero.
    pub fn load(key: &TriviumKey, iv: &TriviumIv) -> Self {
        let pack = |bits: &[bool]| {
            bits.iter()
                .enumerate()
                .fold(0u128, |acc, (k, &b)| acc | ((b as u128) << k))
        };
        Self {
            a: pack(key.bits()),
            b: pack(iv.bits()),
            c: 0b111 << (LEN_C - 3),
            clocks: 0,
        }
    }

    /// Builds a state from 288 arbitrary bits `s1..s288`, clock counter 0.
    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        if bits.len() != STATE_BITS {
            return Err(Error::WrongLength {
                expected: STATE_BITS,
                actual: bits.len(),
            });
        }
        let mut state = Self {
            a: 0,
            b: 0,
            c: 0,
            clocks: 0,
        };
        for (k, &bit) in bits.iter().enumerate() {
            if bit {
                state.set(k + 1);
            }
        }
        Ok(state)
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (1..=STATE_BITS).map(|i| self.bit(i)).collect()
    }

    /// State bit `s_i`, 1-based.
    ///
    /// # Panics
    /// If `i` is not in `1..=288`.
    pub fn bit(&self, i: usize) -> bool {
        match i {
            1..=93 => (self.a >> (i - 1)) & 1 == 1,
            94..=177 => (self.b >> (i - 94)) & 1 == 1,
            178..=288 => (self.c >> (i - 178)) & 1 == 1,
            _ => panic!("Trivium state index {i} out of range 1..=288"),
        }
    }

    fn set(&mut self, i: usize) {
        match i {
            1..=93 => self.a |= 1 << (i - 1),
            94..=177 => self.b |= 1 << (i - 94),
            _ => self.c |= 1 << (i - 178),
        }
    }

    pub fn clocks(&self) -> u64 {
        self.clocks
    }

    /// One Trivium update; returns the output bit computed from the
    /// pre-update state.
    #[inline]
    pub fn clock(&mut self) -> bool {
        self.update(true)
    }

    /// Clocks with all three AND gates forced to zero, leaving only the
    /// linear part of the update. Used to probe the transition matrix.
    pub fn clock_linear(&mut self) -> bool {
        self.update(false)
    }

    #[inline(always)]
    fn update(&mut self, nonlinear: bool) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        let sa = |i: u32| (a >> (i - 1)) & 1;
        let sb = |i: u32| (b >> (i - 94)) & 1;
        let sc = |i: u32| (c >> (i - 178)) & 1;

        let mut t1 = sa(66) ^ sa(93);
        let mut t2 = sb(162) ^ sb(177);
        let mut t3 = sc(243) ^ sc(288);
        let z = t1 ^ t2 ^ t3;

        let gate = nonlinear as u128;
        t1 ^= (sa(91) & sa(92) & gate) ^ sb(171);
        t2 ^= (sb(175) & sb(176) & gate) ^ sc(264);
        t3 ^= (sc(286) & sc(287) & gate) ^ sa(69);

        self.a = ((a << 1) | t3) & MASK_A;
        self.b = ((b << 1) | t1) & MASK_B;
        self.c = ((c << 1) | t2) & MASK_C;
        self.clocks += 1;
        z == 1
    }

    /// Runs the 1152 initialization clocks, discarding their output.
    pub fn warmup(&mut self) -> Result<()> {
        if self.clocks != 0 {
            return Err(Error::AlreadyWarmed {
                clocks: self.clocks,
            });
        }
        for _ in 0..WARMUP_CLOCKS {
            self.clock();
        }
        Ok(())
    }

    /// Collects the next `n` output bits.
    pub fn keystream_bits(&mut self, n: usize) -> BitSequence {
        (0..n).map(|_| self.clock()).collect()
    }
}

/// Loads, warms up and returns `n` keystream bits.
///
/// The nominal limit is 2^64 bits per key/IV pair; it is not enforced.
pub fn keystream(key: &TriviumKey, iv: &TriviumIv, n: usize) -> BitSequence {
    let mut state = TriviumState::load(key, iv);
    state.warmup().expect("freshly loaded state");
    state.keystream_bits(n)
}
