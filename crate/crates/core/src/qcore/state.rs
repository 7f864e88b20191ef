// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex;
use num_traits::{One, Zero};

use super::{hermitian_eigen, qubits_for_len, ComplexMatrix, HermitianEigen, QError};
use crate::scalar::Real;
use crate::tol::{EIG_CLAMP, NORM_TOL, PURITY_TOL, STRUCT_TOL};

/// Amplitudes of an `n`-qubit pure state; length is exactly `2^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T: Real> {
    n_qubits: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    pub fn new(amps: Vec<Complex<T>>) -> Result<Self, QError> {
        let n_qubits = qubits_for_len(amps.len())?;
        Ok(Self { n_qubits, amps })
    }

    /// Computational basis state `|index⟩` on `n` qubits.
    pub fn basis(n_qubits: usize, index: usize) -> Self {
        let mut amps = vec![Complex::zero(); 1 << n_qubits];
        amps[index] = Complex::one();
        Self { n_qubits, amps }
    }

    /// Basis state from a bitstring such as `"010"`; qubit 0 is the first character.
    pub fn from_bits(bits: &str) -> Option<Self> {
        let n = bits.len();
        let mut index = 0usize;
        for ch in bits.chars() {
            index = (index << 1)
                | match ch {
                    '0' => 0,
                    '1' => 1,
                    _ => return None,
                };
        }
        Some(Self::basis(n, index))
    }

    pub fn zero() -> Self {
        Self::basis(1, 0)
    }

    pub fn one() -> Self {
        Self::basis(1, 1)
    }

    /// `(|0⟩ + |1⟩)/√2`
    pub fn plus() -> Self {
        let h = T::FRAC_1_SQRT_2();
        Self { n_qubits: 1, amps: vec![Complex::new(h, T::zero()), Complex::new(h, T::zero())] }
    }

    /// `(|0⟩ - |1⟩)/√2`
    pub fn minus() -> Self {
        let h = T::FRAC_1_SQRT_2();
        Self { n_qubits: 1, amps: vec![Complex::new(h, T::zero()), Complex::new(-h, T::zero())] }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex<T>> {
        self.amps
    }

    pub fn norm(&self) -> T {
        self.amps.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr()).sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm().as_f64() - 1.0).abs() <= STRUCT_TOL
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self { n_qubits: self.n_qubits, amps: self.amps.iter().map(|a| a / n).collect() }
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        assert_eq!(self.amps.len(), other.amps.len());
        self.amps.iter().zip(&other.amps).fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b)
    }

    /// `|⟨self|other⟩|²`
    pub fn fidelity(&self, other: &Self) -> T {
        self.inner(other).norm_sqr()
    }

    /// `self ⊗ other`, `self` on the leading qubits.
    pub fn kron(&self, other: &Self) -> Self {
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Self { n_qubits: self.n_qubits + other.n_qubits, amps }
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        if self.amps.len() != other.amps.len() {
            return T::infinity();
        }
        self.amps.iter().zip(&other.amps).fold(T::zero(), |m, (a, b)| m.max((a - b).norm()))
    }

    pub fn as_column(&self) -> ComplexMatrix<T> {
        ComplexMatrix::column(&self.amps)
    }

    /// `|ψ⟩⟨ψ|` without any normalization check.
    pub fn outer(&self) -> ComplexMatrix<T> {
        let n = self.amps.len();
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.amps[i] * self.amps[j].conj();
            }
        }
        m
    }
}

/// `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩` with the global phase fixed to zero.
pub fn bloch_to_state<T: Real>(theta: T, phi: T) -> StateVector<T> {
    let half = theta / T::lit(2.0);
    let a = Complex::new(half.cos(), T::zero());
    let b = Complex::from_polar(half.sin(), phi);
    StateVector { n_qubits: 1, amps: vec![a, b] }
}

/// Hermitian, positive semidefinite, unit-trace operator on `n` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator<T: Real> {
    n_qubits: usize,
    matrix: ComplexMatrix<T>,
}

impl<T: Real> DensityOperator<T> {
    /// `|ψ⟩⟨ψ|`; `ψ` must have unit norm to within `NORM_TOL`.
    pub fn from_pure(psi: &StateVector<T>) -> Result<Self, QError> {
        let norm = psi.norm().as_f64();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(QError::NonNormalized { norm });
        }
        Ok(Self { n_qubits: psi.n_qubits(), matrix: psi.outer() })
    }

    /// `Σ p_s |ψ_s⟩⟨ψ_s|`.
    pub fn from_ensemble(states: &[StateVector<T>], probs: &[T]) -> Result<Self, QError> {
        if states.is_empty() {
            return Err(QError::BadProbabilities("empty ensemble".into()));
        }
        if states.len() != probs.len() {
            return Err(QError::DimensionMismatch { expected: states.len(), found: probs.len() });
        }
        if probs.iter().any(|p| p.is_nan() || p.as_f64() < 0.0) {
            return Err(QError::BadProbabilities("negative or NaN probability".into()));
        }
        let total: f64 = probs.iter().map(|p| p.as_f64()).sum();
        if (total - 1.0).abs() > STRUCT_TOL {
            return Err(QError::BadProbabilities(format!("probabilities sum to {total}")));
        }
        let n = states[0].n_qubits();
        let dim = 1usize << n;
        let mut m = ComplexMatrix::zeros(dim, dim);
        for (psi, &p) in states.iter().zip(probs) {
            if psi.n_qubits() != n {
                return Err(QError::DimensionMismatch { expected: n, found: psi.n_qubits() });
            }
            let norm = psi.norm().as_f64();
            if (norm - 1.0).abs() > NORM_TOL {
                return Err(QError::NonNormalized { norm });
            }
            m = &m + &psi.outer().scale_real(p);
        }
        Ok(Self { n_qubits: n, matrix: m })
    }

    /// Validate an explicit matrix against the density-operator invariants.
    pub fn from_matrix(matrix: ComplexMatrix<T>) -> Result<Self, QError> {
        if !matrix.is_square() {
            return Err(QError::InvalidDensity("not square".into()));
        }
        let n_qubits = qubits_for_len(matrix.rows())?;
        if !matrix.is_hermitian(STRUCT_TOL) {
            return Err(QError::InvalidDensity("not Hermitian".into()));
        }
        let tr = matrix.trace();
        if (tr.re.as_f64() - 1.0).abs() > STRUCT_TOL || tr.im.as_f64().abs() > STRUCT_TOL {
            return Err(QError::InvalidDensity(format!("trace {}+{}i", tr.re, tr.im)));
        }
        let min = hermitian_eigen(&matrix).values[0].as_f64();
        if min < -EIG_CLAMP {
            return Err(QError::InvalidDensity(format!("negative eigenvalue {min}")));
        }
        Ok(Self { n_qubits, matrix })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.matrix
    }

    /// Spectrum with tiny negative eigenvalues clamped to zero.
    pub fn eigen(&self) -> HermitianEigen<T> {
        hermitian_eigen(&self.matrix).clamp_small_negatives(EIG_CLAMP)
    }

    /// Idempotence test `‖ρ² − ρ‖_max ≤ 1e-10`.
    pub fn is_pure(&self) -> bool {
        self.matrix.matmul(&self.matrix).max_abs_diff(&self.matrix).as_f64() <= PURITY_TOL
    }
}

pub fn purity_check<T: Real>(rho: &DensityOperator<T>) -> bool {
    rho.is_pure()
}
