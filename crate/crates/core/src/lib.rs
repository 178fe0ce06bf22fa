//! Keystream generators and a randomness test battery.
//!
//! * [`trivium`]: the Trivium stream cipher and its GF(2) matrix model
//! * [`a51`]: A5/1 majority-clocked registers
//! * [`cozmo`]: Trivium output injected into A5/1-style registers
//! * [`sts`]: seven statistical tests and a report
//! * [`verify`]: built-in cross-checks

pub mod a51;
pub mod bitseq;
pub mod cozmo;
pub mod error;
pub mod sts;
pub mod trivium;
pub mod verify;

pub use bitseq::{BitOrder, BitSequence, KeyLayout};
pub use error::{Error, Result};
