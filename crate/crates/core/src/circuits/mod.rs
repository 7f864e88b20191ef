// SPDX-License-Identifier: Apache-2.0

//! Gate catalog, circuit model, text format and dense simulation.
//!
//! Phase convention: `RZ(α) = Z_α = diag(1, e^{iα})`, `S = Z_{π/2}`,
//! `T = Z_{π/4}`, `RX(α) = X_α = H Z_α H`. Drawings that write `S` as
//! `e^{iπ/2}Z`-style variants differ from these by a global phase only.
//! Qubit 0 is the top wire and the most significant bit of a basis index.

mod gate;
mod parse;
mod sim;

pub use gate::{Gate, GateKind};
pub use parse::{parse_circuit, unparse_circuit};
pub use sim::{
    apply_gate, ccnot_decomposition, circuit_unitary, cloning_counterexample, expand_ccnot,
    gate_matrix, run_circuit, CloningCase, CloningReport, CCNOT_DECOMPOSITION, MAX_QUBITS,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CircuitError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{}qubit index {index} out of range for {n_qubits} qubit(s)", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    IndexOutOfRange { line: Option<usize>, index: usize, n_qubits: usize },
    #[error("gate {gate} expects {expected} target(s), got {found}")]
    Arity { gate: String, expected: usize, found: usize },
    #[error("gate {gate} has repeated target {index}")]
    RepeatedTarget { gate: String, index: usize },
    #[error("{n_qubits} qubits exceeds the dense simulation cap of {max}")]
    TooLarge { n_qubits: usize, max: usize },
    #[error("input state has {found} qubit(s), circuit has {expected}")]
    StateMismatch { expected: usize, found: usize },
}

/// Ordered gate list over a fixed number of wires. Gates apply in list order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Self { n_qubits, gates: Vec::new() }
    }

    pub fn from_gates(n_qubits: usize, gates: Vec<Gate>) -> Result<Self, CircuitError> {
        let mut c = Self::new(n_qubits);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) -> Result<(), CircuitError> {
        if let Some(&index) = gate.targets().iter().find(|&&t| t >= self.n_qubits) {
            return Err(CircuitError::IndexOutOfRange { line: None, index, n_qubits: self.n_qubits });
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }
}
