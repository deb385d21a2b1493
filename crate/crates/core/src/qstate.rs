//! Dense state-vector engine for the handful of states and gates the
//! password protocols need.
//!
//! Qubit 0 is the leftmost character of a ket string and the most
//! significant bit of an amplitude index, so `|10⟩` is index 2.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::classical::ClassicalEnsemble;
use crate::distribution::{bits_space, OutcomeDistribution, PRUNE_THRESHOLD};
use crate::error::{Error, Result};

/// Allowed deviation of a state's squared norm from 1.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Entrywise tolerance for matrix identities.
pub const MATRIX_TOLERANCE: f64 = 1e-12;

pub type Matrix2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gate {
    X,
    Z,
    H,
}

impl Gate {
    pub const ALL: [Gate; 3] = [Gate::X, Gate::Z, Gate::H];

    pub fn matrix(self) -> Matrix2 {
        let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
        match self {
            Gate::X => [[ZERO, ONE], [ONE, ZERO]],
            Gate::Z => [[ONE, ZERO], [ZERO, -ONE]],
            Gate::H => [[s, s], [s, -s]],
        }
    }

    /// The labeled gate whose matrix equals `m` within [`MATRIX_TOLERANCE`].
    pub fn from_matrix(m: &Matrix2) -> Option<Gate> {
        Gate::ALL
            .into_iter()
            .find(|g| matrix_max_deviation(&g.matrix(), m) <= MATRIX_TOLERANCE)
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gate::X => "X",
            Gate::Z => "Z",
            Gate::H => "H",
        })
    }
}

/// Measurement basis shared by every qubit of a readout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisTag {
    #[default]
    Computational,
    /// Symbols `b` denote `|b̂⟩ = H|b⟩`.
    Hadamard,
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisTag::Computational => "computational",
            BasisTag::Hadamard => "hadamard",
        })
    }
}

pub fn matrix_mul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let mut out = [[ZERO; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn adjoint(a: &Matrix2) -> Matrix2 {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

pub fn matrix_max_deviation(a: &Matrix2, b: &Matrix2) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Pure state of `num_qubits` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidState(format!(
                "amplitude count {len} is not 2^n with n >= 1"
            )));
        }
        let state = StateVector {
            num_qubits: len.trailing_zeros() as usize,
            amplitudes,
        };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidState(format!("squared norm {norm} is not 1")));
        }
        Ok(state)
    }

    /// `|bits⟩`, or `|b̂its⟩` under the Hadamard tag.
    pub fn basis_state(bits: &BitString, basis: BasisTag) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::InvalidArity(0));
        }
        let mut amplitudes = vec![ZERO; 1 << bits.len()];
        amplitudes[bits.to_index()] = ONE;
        let state = StateVector {
            num_qubits: bits.len(),
            amplitudes,
        };
        Ok(match basis {
            BasisTag::Computational => state,
            BasisTag::Hadamard => state.hadamard_all(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, bits: &BitString) -> Complex64 {
        self.amplitudes[bits.to_index()]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum()
    }

    /// Tensor product `self ⊗ other`; `self` supplies the leading qubits.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        StateVector {
            num_qubits: self.num_qubits + other.num_qubits,
            amplitudes,
        }
    }

    pub fn apply(&self, gate: Gate, qubit: usize) -> Result<StateVector> {
        if qubit >= self.num_qubits {
            return Err(Error::IndexOutOfRange {
                index: qubit,
                len: self.num_qubits,
            });
        }
        let m = gate.matrix();
        let mask = 1usize << (self.num_qubits - 1 - qubit);
        let mut out = self.amplitudes.clone();
        for i in (0..out.len()).filter(|i| i & mask == 0) {
            let (a0, a1) = (self.amplitudes[i], self.amplitudes[i | mask]);
            out[i] = m[0][0] * a0 + m[0][1] * a1;
            out[i | mask] = m[1][0] * a0 + m[1][1] * a1;
        }
        Ok(StateVector {
            num_qubits: self.num_qubits,
            amplitudes: out,
        })
    }

    /// H on every qubit.
    pub fn hadamard_all(&self) -> StateVector {
        (0..self.num_qubits).fold(self.clone(), |s, q| {
            s.apply(Gate::H, q).expect("qubit index in range")
        })
    }

    /// The state expressed in the coordinates of `basis`: entry `y` of the
    /// result is `⟨y|self⟩` or `⟨ŷ|self⟩`.
    fn coordinates(&self, basis: BasisTag) -> StateVector {
        match basis {
            BasisTag::Computational => self.clone(),
            // H is self-inverse and real, so ⟨ŷ|s⟩ = ⟨y|H⊗…⊗H|s⟩.
            BasisTag::Hadamard => self.hadamard_all(),
        }
    }

    fn probabilities(&self, basis: BasisTag) -> Vec<f64> {
        self.coordinates(basis)
            .amplitudes
            .iter()
            .map(Complex64::norm_sqr)
            .collect()
    }
}

pub fn make_bell_pair() -> StateVector {
    make_ghz(2).expect("two qubits is a valid arity")
}

/// `(|0…0⟩ + |1…1⟩)/√2` on `m` qubits.
pub fn make_ghz(m: usize) -> Result<StateVector> {
    if m == 0 {
        return Err(Error::InvalidArity(0));
    }
    let mut amplitudes = vec![ZERO; 1 << m];
    let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
    amplitudes[0] = s;
    amplitudes[(1 << m) - 1] = s;
    Ok(StateVector {
        num_qubits: m,
        amplitudes,
    })
}

pub fn apply_gate(state: &StateVector, gate: Gate, qubit: usize) -> Result<StateVector> {
    state.apply(gate, qubit)
}

/// Born-rule distribution of a full readout in `basis`.
pub fn enumerate_outcomes(state: &StateVector, basis: BasisTag) -> OutcomeDistribution {
    let n = state.num_qubits;
    OutcomeDistribution::from_weighted(
        bits_space(n),
        state
            .probabilities(basis)
            .into_iter()
            .enumerate()
            .filter(|&(_, p)| p >= PRUNE_THRESHOLD)
            .map(|(i, p)| (BitString::from_index(i, n).to_string(), p)),
    )
    .expect("a normalized state yields a normalized distribution")
}

/// Draws one full readout in `basis`. Consumes exactly one `f64` from `rng`.
pub fn sample_outcome<R: Rng + ?Sized>(
    state: &StateVector,
    basis: BasisTag,
    rng: &mut R,
) -> BitString {
    let probs = state.probabilities(basis);
    let total: f64 = probs.iter().sum();
    let target = rng.gen::<f64>() * total;
    let mut acc = 0.0;
    let mut last_nonzero = 0;
    for (i, &p) in probs.iter().enumerate() {
        if p < PRUNE_THRESHOLD {
            continue;
        }
        last_nonzero = i;
        acc += p;
        if target < acc {
            return BitString::from_index(i, state.num_qubits);
        }
    }
    BitString::from_index(last_nonzero, state.num_qubits)
}

/// Discards all off-diagonal structure in `basis`, leaving the classical
/// distribution over basis strings.
pub fn dephase(state: &StateVector, basis: BasisTag) -> ClassicalEnsemble {
    let n = state.num_qubits;
    let entries = state
        .probabilities(basis)
        .into_iter()
        .enumerate()
        .filter(|&(_, p)| p >= PRUNE_THRESHOLD)
        .map(|(i, p)| (BitString::from_index(i, n), p));
    ClassicalEnsemble::new(n, basis, entries)
        .expect("a normalized state yields a normalized ensemble")
}

/// Result of conjugating a gate by the Hadamard transform.
#[derive(Clone, Debug, PartialEq)]
pub struct Conjugation {
    pub matrix: Matrix2,
    /// Set when `matrix` is one of the labeled gates.
    pub gate: Option<Gate>,
}

/// Computes `H†·G·H`.
pub fn conjugate_by_hadamard(gate: Gate) -> Conjugation {
    let h = Gate::H.matrix();
    let matrix = matrix_mul(&matrix_mul(&adjoint(&h), &gate.matrix()), &h);
    Conjugation {
        gate: Gate::from_matrix(&matrix),
        matrix,
    }
}
