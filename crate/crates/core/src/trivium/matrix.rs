//! Linear-algebra model of the Trivium update over GF(2):
//!
//! ```text
//! z(t+1) = A · z(t) + b(t)
//! ```
//!
//! `A` is the sparse 288×288 state-transition matrix and `b(t)` carries the
//! three AND products. This model exists only to cross-check the
//! shift-register implementation; nothing on the keystream path uses it.

use crate::error::{Error, Result};

/// Dense bit vector over GF(2). Index 0 holds state bit `z_1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gf2Vector {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (k, &b) in bits.iter().enumerate() {
            v.set(k, b);
        }
        v
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len).map(|k| self.get(k)).collect()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, k: usize) -> bool {
        (self.words[k / 64] >> (k % 64)) & 1 == 1
    }

    pub fn set(&mut self, k: usize, bit: bool) {
        let mask = 1u64 << (k % 64);
        if bit {
            self.words[k / 64] |= mask;
        } else {
            self.words[k / 64] &= !mask;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn dot(&self, other: &Gf2Vector) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .fold(0, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    fn xor_assign(&mut self, other: &Gf2Vector) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }
}

/// Square matrix over GF(2), stored row-wise.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gf2Matrix {
    rows: Vec<Gf2Vector>,
}

impl Gf2Matrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            rows: vec![Gf2Vector::zeros(dim); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Entry `a_ij`, 1-based to match the row/column numbering of the state.
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i - 1].get(j - 1)
    }

    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        self.rows[i - 1].set(j - 1, bit);
    }

    pub fn row_weight(&self, i: usize) -> usize {
        self.rows[i - 1].count_ones()
    }

    pub fn mul_vec(&self, v: &Gf2Vector) -> Gf2Vector {
        assert_eq!(v.len(), self.dim(), "dimension mismatch");
        let mut out = Gf2Vector::zeros(self.dim());
        for (k, row) in self.rows.iter().enumerate() {
            if row.dot(v) {
                out.set(k, true);
            }
        }
        out
    }
}

/// Register geometry of a Trivium-shaped cipher, in thirds.
///
/// Register boundaries sit at `3·n1`, `3·n2`, `3·n3`; the linear taps are
/// `3·u1 .. 3·u6`. For Trivium every tap is a multiple of three, which is
/// what makes the thirds parameterisation possible.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct TriviumParams {
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
    pub u: [usize; 6],
}

impl TriviumParams {
    /// Trivium itself: boundaries 93/177/288, taps 66, 69, 162, 171, 243, 264.
    pub const STANDARD: TriviumParams = TriviumParams {
        n1: 31,
        n2: 59,
        n3: 96,
        u: [22, 23, 54, 57, 81, 88],
    };

    pub fn dim(&self) -> usize {
        3 * self.n3
    }

    pub fn validate(&self) -> Result<()> {
        if !(1 <= self.n1 && self.n1 < self.n2 && self.n2 < self.n3) {
            return Err(Error::InvalidParams(format!(
                "register thirds must satisfy 1 <= n1 < n2 < n3, got {}, {}, {}",
                self.n1, self.n2, self.n3
            )));
        }
        if let Some(u) = self.u.iter().find(|&&u| u == 0 || u > self.n3) {
            return Err(Error::InvalidParams(format!(
                "tap third {u} outside 1..={}",
                self.n3
            )));
        }
        Ok(())
    }
}

impl Default for TriviumParams {
    fn default() -> Self {
        Self::STANDARD
    }
}

/// Builds the state-transition matrix `A`.
///
/// * row 1 reads columns `3u2`, `3u5`, `3n3`
/// * row `3n1+1` reads `3u1`, `3u4`
/// * row `3n2+1` reads `3u3`, `3u6`
/// * every row `i > 1` reads column `i-1` (the shift)
pub fn transition_matrix(params: &TriviumParams) -> Result<Gf2Matrix> {
    params.validate()?;
    let TriviumParams { n1, n2, n3, u } = *params;
    let dim = params.dim();
    let mut a = Gf2Matrix::zeros(dim);
    for i in 2..=dim {
        a.set(i, i - 1, true);
    }
    for j in [3 * u[1], 3 * u[4], 3 * n3] {
        a.set(1, j, true);
    }
    for j in [3 * u[0], 3 * u[3]] {
        a.set(3 * n1 + 1, j, true);
    }
    for j in [3 * u[2], 3 * u[5]] {
        a.set(3 * n2 + 1, j, true);
    }
    Ok(a)
}

/// The nonlinear segment `b(t)`: the AND of the two cells just before the
/// end of each register, fed into the first cell of the next register.
pub fn nonlinear_term(z: &Gf2Vector, params: &TriviumParams) -> Gf2Vector {
    let TriviumParams { n1, n2, n3, .. } = *params;
    // 1-based cell accessor
    let cell = |i: usize| z.get(i - 1);
    let mut b = Gf2Vector::zeros(params.dim());
    b.set(0, cell(3 * n3 - 2) & cell(3 * n3 - 1));
    b.set(3 * n1, cell(3 * n1 - 2) & cell(3 * n1 - 1));
    b.set(3 * n2, cell(3 * n2 - 2) & cell(3 * n2 - 1));
    b
}

/// Precomputed matrix-form stepper.
#[derive(Clone, Debug)]
pub struct MatrixStepper {
    params: TriviumParams,
    a: Gf2Matrix,
}

impl MatrixStepper {
    pub fn new(params: TriviumParams) -> Result<Self> {
        Ok(Self {
            a: transition_matrix(&params)?,
            params,
        })
    }

    pub fn matrix(&self) -> &Gf2Matrix {
        &self.a
    }

    /// `A·z + b(z)`.
    pub fn step(&self, z: &Gf2Vector) -> Gf2Vector {
        let mut next = self.a.mul_vec(z);
        next.xor_assign(&nonlinear_term(z, &self.params));
        next
    }
}

/// One matrix-form update `A·z + b(z)`. Rebuilds `A` on every call; use
/// [`MatrixStepper`] for repeated steps.
pub fn step_matrix(z: &Gf2Vector, params: &TriviumParams) -> Result<Gf2Vector> {
    Ok(MatrixStepper::new(*params)?.step(z))
}
