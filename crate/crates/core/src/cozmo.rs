//! COZMO: Trivium output driving an A5/1-shaped register bank.
//!
//! Every step consumes exactly one Trivium bit `z` and does, in order:
//!
//! 1. `t = r18 ^ r40 ^ r63` (the emitted bit, read before anything moves)
//! 2. `z` = next Trivium output
//! 3. `p1 = r13^r16^r17^r18`, `p2 = r39^r40`, `p3 = r48^r61^r62^r63^z`
//! 4. `m = maj(r8, r29, r51)`
//! 5. every register whose clock tap equals `m` shifts by one, taking a new
//!    first cell from another register's feedback: A ← `p3`, B ← `p1`,
//!    C ← `p2`. A register outside the majority keeps all its cells and its
//!    feedback bit is dropped.
//!
//! Initialisation loads and warms Trivium (1152 clocks), zeroes the
//! registers, then runs 64 full steps with their output discarded, for
//! 1216 Trivium clocks before the first emitted bit.

use crate::a51::{majority, A51State};
use crate::bitseq::BitSequence;
use crate::trivium::{TriviumIv, TriviumKey, TriviumState, WARMUP_CLOCKS};

/// Combined steps run after the Trivium warm-up, output discarded.
pub const REGISTER_WARMUP_STEPS: u64 = 64;
/// Trivium clocks consumed before the first keystream bit (1152 + 64).
pub const TOTAL_WARMUP_CLOCKS: u64 = WARMUP_CLOCKS + REGISTER_WARMUP_STEPS;

/// What happened during one step.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct StepTrace {
    pub output: bool,
    pub trivium_bit: bool,
    pub majority: bool,
    /// Which of A, B, C shifted.
    pub clocked: [bool; 3],
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CozmoState {
    trivium: TriviumState,
    regs: A51State,
    warmed: bool,
    steps: u64,
}

impl CozmoState {
    pub fn init(key: &TriviumKey, iv: &TriviumIv) -> Self {
        let mut trivium = TriviumState::load(key, iv);
        trivium.warmup().expect("freshly loaded state");
        let mut state = Self {
            trivium,
            regs: A51State::zero(),
            warmed: false,
            steps: 0,
        };
        for _ in 0..REGISTER_WARMUP_STEPS {
            state.advance();
        }
        state.warmed = true;
        state
    }

    pub fn trivium(&self) -> &TriviumState {
        &self.trivium
    }

    pub fn registers(&self) -> &A51State {
        &self.regs
    }

    pub fn is_warmed(&self) -> bool {
        self.warmed
    }

    /// Keystream bits emitted since initialisation.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn step(&mut self) -> bool {
        self.step_traced().output
    }

    pub fn step_traced(&mut self) -> StepTrace {
        let trace = self.advance();
        self.steps += 1;
        trace
    }

    #[inline]
    fn advance(&mut self) -> StepTrace {
        let output = self.regs.output();
        let z = self.trivium.clock();
        let p1 = self.regs.feedback(0);
        let p2 = self.regs.feedback(1);
        let p3 = self.regs.feedback(2) ^ z;
        let taps = self.regs.clock_taps();
        let m = majority(taps[0], taps[1], taps[2]);
        let clocked = taps.map(|t| t == m);
        for (k, incoming) in [p3, p1, p2].into_iter().enumerate() {
            if clocked[k] {
                self.regs.shift(k, incoming);
            }
        }
        StepTrace {
            output,
            trivium_bit: z,
            majority: m,
            clocked,
        }
    }

    pub fn keystream_bits(&mut self, n: usize) -> BitSequence {
        (0..n).map(|_| self.step()).collect()
    }

    /// XORs the keystream into `data` in place; bytes are consumed
    /// most-significant bit first.
    pub fn apply_keystream(&mut self, data: &mut [u8]) {
        for byte in data {
            let mut ks = 0u8;
            for _ in 0..8 {
                ks = (ks << 1) | self.step() as u8;
            }
            *byte ^= ks;
        }
    }
}

pub fn keystream(key: &TriviumKey, iv: &TriviumIv, n: usize) -> BitSequence {
    CozmoState::init(key, iv).keystream_bits(n)
}

/// `data ^ keystream`; the same call decrypts.
pub fn encrypt(key: &TriviumKey, iv: &TriviumIv, data: &BitSequence) -> BitSequence {
    let ks = keystream(key, iv, data.len());
    data.xor(&ks).expect("keystream has the data length")
}
