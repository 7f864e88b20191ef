// SPDX-License-Identifier: Apache-2.0

use super::{NodeKind, ZxDiagram, ZxError};
use crate::circuits::{expand_ccnot, Circuit, GateKind};
use crate::phase::Phase;
use crate::C64;

/// Translate a circuit gate by gate. Diagonal gates become Z spiders,
/// X-type gates X spiders, H a Hadamard node, and CNOT a Z(0) on the
/// control joined to an X(0) on the target with scalar √2. CCNOT is
/// expanded first.
pub fn circuit_to_zx(c: &Circuit) -> Result<ZxDiagram, ZxError> {
    let c = expand_ccnot(c);
    let mut d = ZxDiagram::new();
    let mut front: Vec<usize> = (0..c.n_qubits()).map(|q| d.add_node(NodeKind::In(q))).collect();
    let extend = |d: &mut ZxDiagram, front: &mut Vec<usize>, q: usize, kind: NodeKind| {
        let v = d.add_node(kind);
        d.add_edge(front[q], v);
        front[q] = v;
        v
    };
    for g in c.gates() {
        let t = g.targets();
        let kind = g.kind();
        if let Some(p) = kind.z_phase() {
            extend(&mut d, &mut front, t[0], NodeKind::Z(p));
        } else if let Some(p) = kind.x_phase() {
            extend(&mut d, &mut front, t[0], NodeKind::X(p));
        } else {
            match kind {
                GateKind::H => {
                    extend(&mut d, &mut front, t[0], NodeKind::H);
                }
                GateKind::Cnot => {
                    let ctrl = extend(&mut d, &mut front, t[0], NodeKind::Z(Phase::zero()));
                    let targ = extend(&mut d, &mut front, t[1], NodeKind::X(Phase::zero()));
                    d.add_edge(ctrl, targ);
                    d.mul_scalar(C64::new(std::f64::consts::SQRT_2, 0.0));
                }
                other => return Err(ZxError::UnsupportedGate(other.name().to_string())),
            }
        }
    }
    for (q, &f) in front.iter().enumerate() {
        let o = d.add_node(NodeKind::Out(q));
        d.add_edge(f, o);
    }
    Ok(d)
}
