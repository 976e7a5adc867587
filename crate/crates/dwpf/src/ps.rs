//! Weights of the graded sl(r+1|s+1) trigonometric family.
//!
//! States `1..=N` with `N = r + s + 2` split into two sets: `B_minus =
//! {1..s+1}` and `B_plus = {s+2..N}`. The non-vanishing weights depend only
//! on which set each state belongs to and on the order of the two states, so
//! relabelling within either set leaves every weight unchanged; that symmetry
//! is what makes the domain-wall partition function independent of `(r, s)`.

use num_complex::Complex64;
use thiserror::Error;

use crate::vertex::VertexIndex;

#[derive(Debug, Error)]
pub enum PsError {
    #[error("r + s + 2 = {0} exceeds the supported number of states (250)")]
    TooManyStates(u32),
    #[error("crossing parameter eta = {0} has |sinh(eta)| below 1e-12")]
    DegenerateEta(Complex64),
    #[error("vertex index {idx} out of range for N={n_states}")]
    IndexOutOfRange { idx: VertexIndex, n_states: u8 },
}

/// The split of `{1..N}` into `B_minus` and `B_plus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GradedStateSpace {
    r: u32,
    s: u32,
}

impl GradedStateSpace {
    pub fn new(r: u32, s: u32) -> Result<Self, PsError> {
        let n = r + s + 2;
        if n > 250 {
            return Err(PsError::TooManyStates(n));
        }
        Ok(Self { r, s })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn n_states(&self) -> u8 {
        (self.r + self.s + 2) as u8
    }

    /// `true` for states in `B_minus = {1..s+1}`; 1 is always minus and
    /// `N` always plus.
    pub fn is_minus(&self, state: u8) -> bool {
        u32::from(state) <= self.s + 1
    }

    pub fn b_minus(&self) -> std::ops::RangeInclusive<u8> {
        1..=(self.s + 1) as u8
    }

    pub fn b_plus(&self) -> std::ops::RangeInclusive<u8> {
        (self.s + 2) as u8..=self.n_states()
    }
}

/// Weight table: fully determined by the grading and the crossing parameter.
#[derive(Clone, Copy, Debug)]
pub struct PsWeightTable {
    space: GradedStateSpace,
    eta: Complex64,
    sinh_eta: Complex64,
}

impl PsWeightTable {
    pub fn new(space: GradedStateSpace, eta: Complex64) -> Result<Self, PsError> {
        let sinh_eta = eta.sinh();
        if sinh_eta.norm() < 1e-12 {
            return Err(PsError::DegenerateEta(eta));
        }
        Ok(Self { space, eta, sinh_eta })
    }

    pub fn space(&self) -> &GradedStateSpace {
        &self.space
    }

    pub fn eta(&self) -> Complex64 {
        self.eta
    }

    pub fn n_states(&self) -> u8 {
        self.space.n_states()
    }

    pub fn label(&self) -> String {
        format!("ps[r={},s={}]", self.space.r, self.space.s)
    }

    /// Weight at rapidity difference `u`, with the same index-role convention
    /// as the N-state family: `(top, right; left, bottom)`.
    pub fn weight(&self, idx: VertexIndex, u: Complex64) -> Result<Complex64, PsError> {
        let n = self.n_states();
        if !idx.in_range(n) {
            return Err(PsError::IndexOutOfRange { idx, n_states: n });
        }
        Ok(self.weight_raw(idx, u))
    }

    pub(crate) fn weight_raw(&self, idx: VertexIndex, u: Complex64) -> Complex64 {
        let (a, b, c, d) = (idx.top, idx.right, idx.left, idx.bottom);
        if a == b && b == c && c == d {
            // All four bonds equal: sinh(eta(1 -+ u))/sinh(eta) by grading.
            return if self.space.is_minus(a) {
                a_plus(self.eta, u)
            } else {
                a_minus(self.eta, u)
            };
        }
        if a != b && c == b && d == a {
            // Lines pass through unchanged; sign from the relative grading.
            let same_set = self.space.is_minus(a) == self.space.is_minus(b);
            let w = (self.eta * u).sinh() / self.sinh_eta;
            return if same_set { -w } else { w };
        }
        if a != b && c == a && d == b {
            // The two lines trade states: e^{+eta u} for a < b, else e^{-eta u}.
            return if a < b {
                (self.eta * u).exp()
            } else {
                (-self.eta * u).exp()
            };
        }
        Complex64::ZERO
    }

    /// `e^{eta u}`: the corner weight with minimal in-left/out-top and
    /// maximal in-bottom/out-right.
    pub fn c_plus(&self, u: Complex64) -> Complex64 {
        c_plus(self.eta, u)
    }

    /// The all-minimal and all-maximal diagonal weights `(a_plus, a_minus)`.
    pub fn line_permuters(&self, u: Complex64) -> (Complex64, Complex64) {
        (a_plus(self.eta, u), a_minus(self.eta, u))
    }
}

/// `sinh(eta(1 - u))/sinh(eta)`: the all-minimal diagonal weight. Vanishes at
/// `u = 1`, which is what produces the partition-function zeros.
pub fn a_plus(eta: Complex64, u: Complex64) -> Complex64 {
    (eta * (1.0 - u)).sinh() / eta.sinh()
}

/// `sinh(eta(1 + u))/sinh(eta)`: the all-maximal diagonal weight.
pub fn a_minus(eta: Complex64, u: Complex64) -> Complex64 {
    (eta * (1.0 + u)).sinh() / eta.sinh()
}

/// `e^{eta u}`: the corner weight, independent of `(r, s)`.
pub fn c_plus(eta: Complex64, u: Complex64) -> Complex64 {
    (eta * u).exp()
}
