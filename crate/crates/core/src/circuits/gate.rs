// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use num_complex::Complex;
use num_traits::{One, Zero};

use super::CircuitError;
use crate::phase::Phase;
use crate::qcore::ComplexMatrix;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    X,
    Y,
    Z,
    H,
    S,
    T,
    /// S† = Z_{-π/2}; written `SD`.
    Sdg,
    /// T† = Z_{-π/4}; written `TD`.
    Tdg,
    Rz(Phase),
    Rx(Phase),
    Cnot,
    Ccnot,
}

impl GateKind {
    pub fn arity(&self) -> usize {
        match self {
            GateKind::Cnot => 2,
            GateKind::Ccnot => 3,
            _ => 1,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::T => "T",
            GateKind::Sdg => "SD",
            GateKind::Tdg => "TD",
            GateKind::Rz(_) => "RZ",
            GateKind::Rx(_) => "RX",
            GateKind::Cnot => "CNOT",
            GateKind::Ccnot => "CCNOT",
        }
    }

    /// The Z-axis phase of diagonal single-qubit gates, `diag(1, e^{iα})`.
    pub fn z_phase(&self) -> Option<Phase> {
        let q = |n, d| Phase::new(n, d).ok();
        match *self {
            GateKind::Z => Some(Phase::pi()),
            GateKind::S => q(1, 2),
            GateKind::T => q(1, 4),
            GateKind::Sdg => q(-1, 2),
            GateKind::Tdg => q(-1, 4),
            GateKind::Rz(a) => Some(a),
            _ => None,
        }
    }

    /// The X-axis phase of `X_α`-type gates.
    pub fn x_phase(&self) -> Option<Phase> {
        match *self {
            GateKind::X => Some(Phase::pi()),
            GateKind::Rx(a) => Some(a),
            _ => None,
        }
    }
}

/// A gate kind applied to an ordered list of distinct wires. For CNOT the
/// order is (control, target); for CCNOT (control, control, target).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gate {
    kind: GateKind,
    targets: Vec<usize>,
}

impl Gate {
    pub fn new(kind: GateKind, targets: Vec<usize>) -> Result<Self, CircuitError> {
        if targets.len() != kind.arity() {
            return Err(CircuitError::Arity {
                gate: kind.name().to_string(),
                expected: kind.arity(),
                found: targets.len(),
            });
        }
        for (i, t) in targets.iter().enumerate() {
            if targets[..i].contains(t) {
                return Err(CircuitError::RepeatedTarget { gate: kind.name().to_string(), index: *t });
            }
        }
        Ok(Self { kind, targets })
    }

    pub fn single(kind: GateKind, q: usize) -> Self {
        Self::new(kind, vec![q]).expect("single-qubit kind")
    }

    pub fn h(q: usize) -> Self {
        Self::single(GateKind::H, q)
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Self::new(GateKind::Cnot, vec![control, target]).expect("distinct cnot wires")
    }

    pub fn ccnot(c0: usize, c1: usize, target: usize) -> Self {
        Self::new(GateKind::Ccnot, vec![c0, c1, target]).expect("distinct ccnot wires")
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    /// `2^k × 2^k` matrix on the gate's own wires, `targets[0]` most significant.
    pub fn local_matrix<T: Real>(&self) -> ComplexMatrix<T> {
        let z = Complex::<T>::zero();
        let o = Complex::<T>::one();
        let i = Complex::new(T::zero(), T::one());
        let h = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
        if let Some(a) = self.kind.z_phase() {
            return ComplexMatrix::diagonal(&[o, a.cis()]);
        }
        match self.kind {
            GateKind::X => ComplexMatrix::from_rows(&[vec![z, o], vec![o, z]]),
            GateKind::Y => ComplexMatrix::from_rows(&[vec![z, -i], vec![i, z]]),
            GateKind::H => ComplexMatrix::from_rows(&[vec![h, h], vec![h, -h]]),
            GateKind::Rx(a) => {
                let e: Complex<T> = a.cis();
                let half = T::lit(0.5);
                let p = (o + e) * half;
                let m = (o - e) * half;
                ComplexMatrix::from_rows(&[vec![p, m], vec![m, p]])
            }
            GateKind::Cnot => permutation(4, |x| if x & 0b10 != 0 { x ^ 0b01 } else { x }),
            GateKind::Ccnot => permutation(8, |x| if x & 0b110 == 0b110 { x ^ 0b001 } else { x }),
            _ => unreachable!("diagonal kinds handled above"),
        }
    }
}

fn permutation<T: Real>(dim: usize, f: impl Fn(usize) -> usize) -> ComplexMatrix<T> {
    let mut m = ComplexMatrix::zeros(dim, dim);
    for x in 0..dim {
        m[(f(x), x)] = Complex::one();
    }
    m
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.name())?;
        match self.kind {
            GateKind::Rz(a) | GateKind::Rx(a) => write!(f, " {a}")?,
            _ => {}
        }
        for t in &self.targets {
            write!(f, " {t}")?;
        }
        Ok(())
    }
}
