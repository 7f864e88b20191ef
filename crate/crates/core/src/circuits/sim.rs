// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex;
use num_traits::Zero;
use serde::Serialize;

use super::{parse_circuit, Circuit, CircuitError, Gate, GateKind};
use crate::qcore::{ComplexMatrix, StateVector};
use crate::scalar::Real;

/// Dense simulation cap.
pub const MAX_QUBITS: usize = 12;

/// CCNOT on wires (0, 1 → 2) as {H, T, T†, CNOT}.
pub const CCNOT_DECOMPOSITION: &str = include_str!("../../fixtures/ccnot_decomposition.qc");

pub fn ccnot_decomposition() -> Circuit {
    parse_circuit(CCNOT_DECOMPOSITION).expect("bundled decomposition parses")
}

/// Replace every CCNOT by the bundled decomposition, relabelled onto its wires.
pub fn expand_ccnot(c: &Circuit) -> Circuit {
    let decomposition = ccnot_decomposition();
    let mut out = Circuit::new(c.n_qubits());
    for g in c.gates() {
        if g.kind() == GateKind::Ccnot {
            let wires = g.targets();
            for d in decomposition.gates() {
                let mapped = d.targets().iter().map(|&t| wires[t]).collect();
                out.push(Gate::new(d.kind(), mapped).expect("relabelling keeps wires distinct"))
                    .expect("wires within range");
            }
        } else {
            out.push(g.clone()).expect("wires within range");
        }
    }
    out
}

/// Apply `gate` in place to a `2^n` amplitude vector.
pub fn apply_gate<T: Real>(amps: &mut [Complex<T>], gate: &Gate, n_qubits: usize) {
    assert_eq!(amps.len(), 1 << n_qubits);
    let local = gate.local_matrix::<T>();
    let k = gate.targets().len();
    let masks: Vec<usize> = gate.targets().iter().map(|&t| 1usize << (n_qubits - 1 - t)).collect();
    let all = masks.iter().fold(0, |acc, m| acc | m);
    let dim = 1usize << k;
    let offsets: Vec<usize> = (0..dim)
        .map(|l| (0..k).filter(|&j| l & (1 << (k - 1 - j)) != 0).fold(0, |acc, j| acc | masks[j]))
        .collect();
    let mut buf = vec![Complex::zero(); dim];
    for base in 0..amps.len() {
        if base & all != 0 {
            continue;
        }
        for (l, off) in offsets.iter().enumerate() {
            buf[l] = amps[base | off];
        }
        for (r, off) in offsets.iter().enumerate() {
            let mut acc = Complex::zero();
            for (c, b) in buf.iter().enumerate() {
                acc = acc + local[(r, c)] * b;
            }
            amps[base | off] = acc;
        }
    }
}

/// `2^n × 2^n` embedding of `gate`, identity on the other wires.
pub fn gate_matrix<T: Real>(gate: &Gate, n_qubits: usize) -> ComplexMatrix<T> {
    let mut c = Circuit::new(n_qubits);
    c.push(gate.clone()).expect("gate fits the register");
    circuit_unitary(&c).expect("gate_matrix is only used at desk scale")
}

/// Product of gate matrices, first gate acting first.
pub fn circuit_unitary<T: Real>(c: &Circuit) -> Result<ComplexMatrix<T>, CircuitError> {
    let n = c.n_qubits();
    if n > MAX_QUBITS {
        return Err(CircuitError::TooLarge { n_qubits: n, max: MAX_QUBITS });
    }
    let dim = 1usize << n;
    let mut u = ComplexMatrix::<T>::zeros(dim, dim);
    let mut col = vec![Complex::zero(); dim];
    for j in 0..dim {
        col.iter_mut().for_each(|a| *a = Complex::zero());
        col[j] = Complex::new(T::one(), T::zero());
        for g in c.gates() {
            apply_gate(&mut col, g, n);
        }
        for (i, a) in col.iter().enumerate() {
            u[(i, j)] = *a;
        }
    }
    Ok(u)
}

/// Output state for the given input state.
pub fn run_circuit<T: Real>(c: &Circuit, input: &StateVector<T>) -> Result<StateVector<T>, CircuitError> {
    if c.n_qubits() > MAX_QUBITS {
        return Err(CircuitError::TooLarge { n_qubits: c.n_qubits(), max: MAX_QUBITS });
    }
    if input.n_qubits() != c.n_qubits() {
        return Err(CircuitError::StateMismatch { expected: c.n_qubits(), found: input.n_qubits() });
    }
    let mut amps = input.amplitudes().to_vec();
    for g in c.gates() {
        apply_gate(&mut amps, g, c.n_qubits());
    }
    Ok(StateVector::new(amps).expect("length preserved"))
}

#[derive(Clone, Debug, Serialize)]
pub struct CloningCase {
    pub source: String,
    /// `|⟨ss|out⟩|²` for `out = CNOT(|s⟩ ⊗ |0⟩)`.
    pub fidelity: f64,
    pub exact_copy: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CloningReport {
    pub cases: Vec<CloningCase>,
}

/// CNOT with a `|0⟩` target copies basis states but not `|+⟩`.
pub fn cloning_counterexample() -> CloningReport {
    let cnot = Circuit::from_gates(2, vec![Gate::cnot(0, 1)]).expect("two wires");
    let sources: [(&str, StateVector<f64>); 3] =
        [("|0>", StateVector::zero()), ("|1>", StateVector::one()), ("|+>", StateVector::plus())];
    let cases = sources
        .into_iter()
        .map(|(name, s)| {
            let out = run_circuit(&cnot, &s.kron(&StateVector::zero())).expect("2-qubit input");
            let target = s.kron(&s);
            let fidelity = target.fidelity(&out);
            CloningCase { source: name.to_string(), fidelity, exact_copy: (fidelity - 1.0).abs() <= 1e-12 }
        })
        .collect();
    CloningReport { cases }
}
