//! A5/1: three majority-clocked LFSRs of 19, 22 and 23 bits.
//!
//! Cells are numbered globally `r0..r63`: register A is `r0..r18`, B is
//! `r19..r40` and C is `r41..r63`. Each register is a `u32` whose bit `k`
//! is its `k`-th cell. Clocking a register inserts a new bit at its first
//! cell and moves every other cell one position towards its last cell.
//!
//! | register | cells       | feedback taps          | clock tap | output |
//! |----------|-------------|------------------------|-----------|--------|
//! | A        | `r0..r18`   | r13, r16, r17, r18     | r8        | r18    |
//! | B        | `r19..r40`  | r39, r40               | r29       | r40    |
//! | C        | `r41..r63`  | r48, r61, r62, r63     | r51       | r63    |

use crate::bitseq::{parse_key_bits, BitSequence, KeyLayout};
use crate::error::{Error, Result};

pub const KEY_BITS: usize = 64;
pub const FRAME_BITS: usize = 22;
pub const REGISTER_LENGTHS: [u32; 3] = [19, 22, 23];
/// Global index of each register's first cell.
pub const REGISTER_OFFSETS: [usize; 3] = [0, 19, 41];
/// Majority-clocked mixing steps of the GSM loading procedure.
pub const MIXING_CLOCKS: usize = 100;

const FEEDBACK_MASKS: [u32; 3] = [
    (1 << 13) | (1 << 16) | (1 << 17) | (1 << 18),
    (1 << 20) | (1 << 21),
    (1 << 7) | (1 << 20) | (1 << 21) | (1 << 22),
];
const CLOCK_TAPS: [u32; 3] = [8, 10, 10];

/// `(l & m) ^ (m & n) ^ (l & n)`: true iff at least two inputs are true.
#[inline]
pub fn majority(l: bool, m: bool, n: bool) -> bool {
    (l & m) ^ (m & n) ^ (l & n)
}

/// A 64-bit A5/1 key, bits in loading order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct A51Key([bool; KEY_BITS]);

impl A51Key {
    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let arr: [bool; KEY_BITS] = bits.try_into().map_err(|_| Error::WrongLength {
            expected: KEY_BITS,
            actual: bits.len(),
        })?;
        Ok(Self(arr))
    }

    /// 16 hex digits, first key bit = MSB of the first byte.
    pub fn from_hex(text: &str) -> Result<Self> {
        Self::from_hex_layout(text, KeyLayout::Msb)
    }

    pub fn from_hex_layout(text: &str, layout: KeyLayout) -> Result<Self> {
        Self::from_bits(parse_key_bits(text, layout, KEY_BITS)?.as_slice())
    }

    pub fn bits(&self) -> &[bool; KEY_BITS] {
        &self.0
    }
}

/// The three A5/1 registers.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct A51State {
    regs: [u32; 3],
}

impl A51State {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds a state from raw register words; bits above each register's
    /// length are dropped.
    pub fn from_registers(regs: [u32; 3]) -> Self {
        let mut s = Self { regs };
        for k in 0..3 {
            s.regs[k] &= mask(k);
        }
        s
    }

    pub fn registers(&self) -> [u32; 3] {
        self.regs
    }

    /// Fills `r0..r63` with `K1..K64` in order.
    pub fn load_raw(key: &A51Key) -> Self {
        let mut s = Self::zero();
        for (r, &bit) in key.bits().iter().enumerate() {
            s.set_cell(r, bit);
        }
        s
    }

    /// GSM key/frame setup: 64 key bits then 22 frame bits (least
    /// significant first) are XORed into all three feedback paths with
    /// every register clocking, followed by majority-clocked mixing.
    ///
    /// The GSM burst reads each output bit *after* its clock, while
    /// [`A51State::clock`] reports the pre-clock output, so mixing runs
    /// `MIXING_CLOCKS + 1` steps. The first bit of [`A51State::keystream_bits`]
    /// is then the first burst bit.
    pub fn load_standard(key: &A51Key, frame: u32) -> Result<Self> {
        if frame >> FRAME_BITS != 0 {
            return Err(Error::FrameOutOfRange(frame));
        }
        let mut s = Self::zero();
        let frame_bits = (0..FRAME_BITS).map(|i| (frame >> i) & 1 == 1);
        for bit in key.bits().iter().copied().chain(frame_bits) {
            for k in 0..3 {
                let fb = s.feedback(k) ^ bit;
                s.shift(k, fb);
            }
        }
        for _ in 0..=MIXING_CLOCKS {
            s.clock();
        }
        Ok(s)
    }

    /// Cell `r_i`, global 0-based index.
    ///
    /// # Panics
    /// If `i > 63`.
    pub fn cell(&self, i: usize) -> bool {
        let (k, j) = locate(i);
        (self.regs[k] >> j) & 1 == 1
    }

    fn set_cell(&mut self, i: usize, bit: bool) {
        let (k, j) = locate(i);
        self.regs[k] = (self.regs[k] & !(1 << j)) | ((bit as u32) << j);
    }

    /// Clock-control bits `(r8, r29, r51)`.
    #[inline]
    pub fn clock_taps(&self) -> [bool; 3] {
        [0, 1, 2].map(|k| (self.regs[k] >> CLOCK_TAPS[k]) & 1 == 1)
    }

    /// XOR of register `k`'s feedback taps.
    #[inline]
    pub fn feedback(&self, k: usize) -> bool {
        (self.regs[k] & FEEDBACK_MASKS[k]).count_ones() & 1 == 1
    }

    /// `r18 ^ r40 ^ r63`.
    #[inline]
    pub fn output(&self) -> bool {
        let top = |k: usize| (self.regs[k] >> (REGISTER_LENGTHS[k] - 1)) & 1;
        (top(0) ^ top(1) ^ top(2)) == 1
    }

    /// Shifts register `k` by one, inserting `bit` at its first cell.
    #[inline]
    pub fn shift(&mut self, k: usize, bit: bool) {
        self.regs[k] = ((self.regs[k] << 1) | bit as u32) & mask(k);
    }

    /// One majority-clocked step. Returns the output of the pre-clock state.
    #[inline]
    pub fn clock(&mut self) -> bool {
        self.clock_traced().0
    }

    /// Like [`A51State::clock`], also reporting which registers moved.
    pub fn clock_traced(&mut self) -> (bool, [bool; 3]) {
        let out = self.output();
        let taps = self.clock_taps();
        let m = majority(taps[0], taps[1], taps[2]);
        let moved = taps.map(|t| t == m);
        for (k, _) in moved.iter().enumerate().filter(|(_, &mv)| mv) {
            let fb = self.feedback(k);
            self.shift(k, fb);
        }
        (out, moved)
    }

    pub fn keystream_bits(&mut self, n: usize) -> BitSequence {
        (0..n).map(|_| self.clock()).collect()
    }
}

/// `n` output bits from a copy of `state`.
pub fn keystream(state: &A51State, n: usize) -> BitSequence {
    let mut s = *state;
    s.keystream_bits(n)
}

#[inline]
fn mask(k: usize) -> u32 {
    (1 << REGISTER_LENGTHS[k]) - 1
}

fn locate(i: usize) -> (usize, usize) {
    match i {
        0..=18 => (0, i),
        19..=40 => (1, i - 19),
        41..=63 => (2, i - 41),
        _ => panic!("A5/1 cell index {i} out of range 0..=63"),
    }
}
