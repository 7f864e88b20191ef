// SPDX-License-Identifier: Apache-2.0

//! Complex linear algebra substrate, qubit states and density operators.
//!
//! Basis ordering: index `i` of a `2^n` vector encodes the bitstring of `i`
//! with qubit 0 as the most significant (leftmost) bit.

mod eigen;
mod matrix;
mod state;

pub use eigen::{hermitian_eigen, HermitianEigen};
pub use matrix::ComplexMatrix;
pub use state::{bloch_to_state, purity_check, DensityOperator, StateVector};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QError {
    #[error("state is not normalized (norm {norm})")]
    NonNormalized { norm: f64 },
    #[error("bad probabilities: {0}")]
    BadProbabilities(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("not a density operator: {0}")]
    InvalidDensity(String),
}

/// `log2(len)` when `len` is a power of two.
pub(crate) fn qubits_for_len(len: usize) -> Result<usize, QError> {
    if len == 0 || !len.is_power_of_two() {
        return Err(QError::NotPowerOfTwo(len));
    }
    Ok(len.trailing_zeros() as usize)
}
