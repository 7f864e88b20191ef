// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex;

use super::HopfStructure;
use crate::qcore::ComplexMatrix;
use crate::scalar::Real;
use crate::zxgraph::{eval_diagram, NodeKind, ZxDiagram};
use crate::Phase;

fn one<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

/// The two structures on the group algebra of `Z_n` (basis `g = 0..n`,
/// identity `0`).
///
/// Red: group multiplication, unit `e`, `Δ(g) = Σ_{hl=g} h⊗l`, `ε = δ_e`.
/// Green: pointwise `m(g⊗h) = δ_{gh} g`, unit `Σ g`, `Δ(g) = g⊗g`, `ε = 1`.
/// Both carry the antipode `g ↦ g⁻¹` and `◊ = 1`.
pub fn build_group_algebra<T: Real>(n: usize) -> (HopfStructure<T>, HopfStructure<T>) {
    assert!(n > 0, "group order must be positive");
    let mut antipode = ComplexMatrix::zeros(n, n);
    for g in 0..n {
        antipode[((n - g) % n, g)] = one();
    }

    let mut m_red = ComplexMatrix::zeros(n, n * n);
    let mut d_red = ComplexMatrix::zeros(n * n, n);
    let mut m_green = ComplexMatrix::zeros(n, n * n);
    let mut d_green = ComplexMatrix::zeros(n * n, n);
    for g in 0..n {
        for h in 0..n {
            m_red[((g + h) % n, g * n + h)] = one();
            d_red[(g * n + h, (g + h) % n)] = one();
        }
        m_green[(g, g * n + g)] = one();
        d_green[(g * n + g, g)] = one();
    }
    let mut eta_red = ComplexMatrix::zeros(n, 1);
    eta_red[(0, 0)] = one();
    let mut eps_red = ComplexMatrix::zeros(1, n);
    eps_red[(0, 0)] = one();
    let eta_green = ComplexMatrix::from_vec(n, 1, vec![one(); n]);
    let eps_green = ComplexMatrix::from_vec(1, n, vec![one(); n]);

    let red = HopfStructure::new(m_red, eta_red, d_red, eps_red, antipode.clone(), T::one()).unwrap();
    let green = HopfStructure::new(m_green, eta_green, d_green, eps_green, antipode, T::one()).unwrap();
    (red, green)
}

fn spider<T: Real>(kind: NodeKind, inputs: usize, outputs: usize) -> ComplexMatrix<T> {
    let mut d = ZxDiagram::new();
    let s = d.add_node(kind);
    for q in 0..inputs {
        let b = d.add_node(NodeKind::In(q));
        d.add_edge(b, s);
    }
    for q in 0..outputs {
        let b = d.add_node(NodeKind::Out(q));
        d.add_edge(s, b);
    }
    eval_diagram(&d).expect("single spider evaluates")
}

fn structure<T: Real>(kind: NodeKind) -> HopfStructure<T> {
    HopfStructure::new(
        spider(kind, 2, 1),
        spider(kind, 0, 1),
        spider(kind, 1, 2),
        spider(kind, 1, 0),
        ComplexMatrix::identity(2),
        T::SQRT_2(),
    )
    .unwrap()
}

/// Phase-free red (X) and green (Z) spiders read as (co)algebras on `C²`,
/// obtained from the diagram evaluator. Antipode `id`, `◊ = √2`.
pub fn zx_structures<T: Real>() -> (HopfStructure<T>, HopfStructure<T>) {
    (structure(NodeKind::X(Phase::zero())), structure(NodeKind::Z(Phase::zero())))
}
