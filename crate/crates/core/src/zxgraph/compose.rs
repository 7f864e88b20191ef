// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use super::{NodeKind, ZxDiagram, ZxError};

/// Copy every node of `src` into `dst` with fresh ids, shifting boundary
/// positions. Returns the id map.
fn append(dst: &mut ZxDiagram, src: &ZxDiagram, in_shift: usize, out_shift: usize) -> BTreeMap<usize, usize> {
    let mut map = BTreeMap::new();
    for n in src.nodes() {
        let kind = match n.kind {
            NodeKind::In(p) => NodeKind::In(p + in_shift),
            NodeKind::Out(p) => NodeKind::Out(p + out_shift),
            k => k,
        };
        map.insert(n.id, dst.add_node(kind));
    }
    for &(a, b) in src.edges() {
        dst.add_edge(map[&a], map[&b]);
    }
    map
}

/// `second ∘ first`: the outputs of `first` are plugged into the inputs of
/// `second`, so `eval(result) = eval(second) · eval(first)`.
pub fn compose(first: &ZxDiagram, second: &ZxDiagram) -> Result<ZxDiagram, ZxError> {
    if first.n_outputs() != second.n_inputs() {
        return Err(ZxError::Malformed(format!(
            "cannot plug {} outputs into {} inputs",
            first.n_outputs(),
            second.n_inputs()
        )));
    }
    let mut d = ZxDiagram::new();
    let ma = append(&mut d, first, 0, 0);
    let mb = append(&mut d, second, 0, 0);
    let outs: Vec<usize> = first.outputs().iter().map(|o| ma[o]).collect();
    let ins: Vec<usize> = second.inputs().iter().map(|i| mb[i]).collect();
    // each glued pair becomes an identity spider, which also handles
    // boundary-to-boundary wires on either side
    let mut joints = Vec::new();
    for (o, i) in outs.into_iter().zip(ins) {
        let w = d.neighbors(i)[0];
        d.remove_node(i);
        d.set_kind(o, NodeKind::Z(crate::phase::Phase::zero()));
        d.add_edge(o, w);
        joints.push(o);
    }
    for j in joints {
        let nb = d.neighbors(j);
        if nb.len() == 2 && nb[0] != j && nb[1] != j && nb[0] != nb[1] {
            d.remove_node(j);
            d.add_edge(nb[0], nb[1]);
        }
    }
    d.set_scalar(first.scalar() * second.scalar());
    Ok(d)
}

/// Side-by-side juxtaposition, `top` on the more significant wires.
pub fn tensor(top: &ZxDiagram, bottom: &ZxDiagram) -> ZxDiagram {
    let mut d = ZxDiagram::new();
    append(&mut d, top, 0, 0);
    append(&mut d, bottom, top.n_inputs(), top.n_outputs());
    d.set_scalar(top.scalar() * bottom.scalar());
    d
}
