//! Bit sequences and their text/byte encodings.
//!
//! Index 0 of a [`BitSequence`] is always the first generated (or first
//! transmitted) bit. When bits are packed into bytes the default order is
//! most-significant-bit first, so the hex string `"80"` is the sequence
//! `1,0,0,0,0,0,0,0`. A key written as hex therefore has its first key bit
//! in the top bit of its first byte.
//!
//! Published reference vectors do not all follow that convention, so
//! [`BitOrder`] and [`KeyLayout`] make the alternatives explicit instead
//! of guessing.

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};

/// Bit order used when packing a sequence into bytes or unpacking bytes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BitOrder {
    /// First bit goes to the most significant bit of each byte.
    #[default]
    MsbFirst,
    /// First bit goes to the least significant bit of each byte.
    LsbFirst,
}

/// How a hex key or IV string maps onto the key bits `K1, K2, ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KeyLayout {
    /// `K1` is the most significant bit of the first byte.
    #[default]
    Msb,
    /// `K1` is the least significant bit of the first byte (GSM A5/1
    /// reference code).
    Lsb,
    /// `K1` is the most significant bit of the *last* byte (eSTREAM
    /// Trivium reference code).
    Reversed,
}

/// An ordered, immutable-by-convention sequence of bits.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct BitSequence {
    bits: Vec<bool>,
}

impl BitSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        Self {
            bits: Vec::with_capacity(n),
        }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            bits: vec![false; n],
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        self.bits.get(i).copied()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    pub fn into_vec(self) -> Vec<bool> {
        self.bits
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = bool> + ExactSizeIterator + '_ {
        self.bits.iter().copied()
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// The first `n` bits (or the whole sequence if it is shorter).
    pub fn prefix(&self, n: usize) -> BitSequence {
        self.bits[..n.min(self.len())].iter().copied().collect()
    }

    pub fn reversed(&self) -> BitSequence {
        self.bits.iter().rev().copied().collect()
    }

    /// Parses hex text, expanding every byte most-significant-bit first.
    pub fn from_hex(text: &str) -> Result<Self> {
        let bytes = decode_hex(text)?;
        Ok(Self::from_bytes(&bytes, BitOrder::MsbFirst))
    }

    /// Inverse of [`BitSequence::from_hex`]. Uppercase digits.
    pub fn to_hex(&self) -> Result<String> {
        if !self.len().is_multiple_of(8) {
            return Err(Error::NotByteAligned(self.len()));
        }
        Ok(encode_hex(&self.to_bytes(BitOrder::MsbFirst)))
    }

    /// Parses `'0'`/`'1'` text; ASCII whitespace is skipped.
    pub fn from_ascii(text: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(text.len());
        for (position, c) in text.chars().enumerate() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_ascii_whitespace() => {}
                found => return Err(Error::InvalidBinary { position, found }),
            }
        }
        Ok(Self { bits })
    }

    pub fn to_ascii(&self) -> String {
        self.bits
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }

    pub fn from_bytes(bytes: &[u8], order: BitOrder) -> Self {
        let mut bits = Vec::with_capacity(bytes.len() * 8);
        for &byte in bytes {
            for j in 0..8 {
                let shift = match order {
                    BitOrder::MsbFirst => 7 - j,
                    BitOrder::LsbFirst => j,
                };
                bits.push((byte >> shift) & 1 == 1);
            }
        }
        Self { bits }
    }

    /// Packs into bytes. A trailing partial byte is zero-padded.
    pub fn to_bytes(&self, order: BitOrder) -> Vec<u8> {
        self.bits
            .chunks(8)
            .map(|chunk| {
                chunk.iter().enumerate().fold(0u8, |acc, (j, &b)| {
                    let shift = match order {
                        BitOrder::MsbFirst => 7 - j,
                        BitOrder::LsbFirst => j,
                    };
                    acc | ((b as u8) << shift)
                })
            })
            .collect()
    }

    /// Elementwise exclusive-or of two equal-length sequences.
    pub fn xor(&self, other: &BitSequence) -> Result<BitSequence> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(&a, &b)| a ^ b)
            .collect())
    }
}

impl From<Vec<bool>> for BitSequence {
    fn from(bits: Vec<bool>) -> Self {
        Self { bits }
    }
}

impl FromIterator<bool> for BitSequence {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self {
            bits: iter.into_iter().collect(),
        }
    }
}

impl Extend<bool> for BitSequence {
    fn extend<I: IntoIterator<Item = bool>>(&mut self, iter: I) {
        self.bits.extend(iter);
    }
}

impl Index<usize> for BitSequence {
    type Output = bool;

    fn index(&self, i: usize) -> &bool {
        &self.bits[i]
    }
}

impl fmt::Debug for BitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const SHOWN: usize = 64;
        let head: String = self.bits[..self.len().min(SHOWN)]
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect();
        let more = if self.len() > SHOWN { "..." } else { "" };
        write!(f, "BitSequence[{}]({head}{more})", self.len())
    }
}

/// Parses a hex key or IV into exactly `expected` bits using `layout`.
pub fn parse_key_bits(text: &str, layout: KeyLayout, expected: usize) -> Result<BitSequence> {
    let bytes = decode_hex(text.trim())?;
    let bits = match layout {
        KeyLayout::Msb => BitSequence::from_bytes(&bytes, BitOrder::MsbFirst),
        KeyLayout::Lsb => BitSequence::from_bytes(&bytes, BitOrder::LsbFirst),
        KeyLayout::Reversed => BitSequence::from_bytes(&bytes, BitOrder::LsbFirst).reversed(),
    };
    if bits.len() != expected {
        return Err(Error::WrongLength {
            expected,
            actual: bits.len(),
        });
    }
    Ok(bits)
}

fn decode_hex(text: &str) -> Result<Vec<u8>> {
    let mut nibbles = Vec::with_capacity(text.len());
    for (position, c) in text.chars().enumerate() {
        match c.to_digit(16) {
            Some(d) => nibbles.push(d as u8),
            None => return Err(Error::InvalidHex { position, found: c }),
        }
    }
    if nibbles.len() % 2 != 0 {
        return Err(Error::OddHexLength(nibbles.len()));
    }
    Ok(nibbles.chunks(2).map(|p| (p[0] << 4) | p[1]).collect())
}

pub(crate) fn encode_hex(bytes: &[u8]) -> String {
    use std::fmt::Write;
    bytes
        .iter()
        .fold(String::with_capacity(bytes.len() * 2), |mut s, b| {
            let _ = write!(s, "{b:02X}");
            s
        })
}
