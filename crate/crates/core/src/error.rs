use thiserror::Error;

/// Errors raised by bit-sequence parsing and the cipher front ends.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid hex digit {found:?} at position {position}")]
    InvalidHex { position: usize, found: char },
    #[error("hex string has odd length {0}")]
    OddHexLength(usize),
    #[error("invalid binary digit {found:?} at position {position}")]
    InvalidBinary { position: usize, found: char },
    #[error("length mismatch: {left} bits vs {right} bits")]
    LengthMismatch { left: usize, right: usize },
    #[error("sequence of {0} bits is not byte aligned")]
    NotByteAligned(usize),
    #[error("expected {expected} bits, got {actual}")]
    WrongLength { expected: usize, actual: usize },
    #[error("frame number {0:#x} does not fit in 22 bits")]
    FrameOutOfRange(u32),
    #[error("state already warmed up ({clocks} clocks applied since loading)")]
    AlreadyWarmed { clocks: u64 },
    #[error("invalid register parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
