// SPDX-License-Identifier: Apache-2.0

//! ZX-diagrams as open undirected multigraphs, with a dense tensor evaluator.
//!
//! Node ids are stable `usize` keys. Edges are unordered pairs kept as
//! `(min, max)`; parallel edges and self-loops are allowed. Boundary nodes
//! carry an explicit position; inputs index matrix columns and outputs index
//! rows, position 0 being the most significant bit.

mod compose;
mod convert;
mod eval;
mod io;
pub mod random;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

pub use crate::phase::Phase;
pub use compose::{compose, tensor};
pub use convert::circuit_to_zx;
pub use eval::{eval_diagram, eval_scalar, MAX_EVAL_BOUNDARIES, MAX_EVAL_NODES};
pub use io::{export, import_json, DiagramJson, ExportFormat};

use crate::C64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ZxError {
    #[error("malformed diagram: {0}")]
    Malformed(String),
    #[error("diagram too large to evaluate: {boundaries} boundaries, {nodes} nodes (caps {max_boundaries}/{max_nodes})")]
    TooLarge { boundaries: usize, nodes: usize, max_boundaries: usize, max_nodes: usize },
    #[error("gate {0} has no ZX translation")]
    UnsupportedGate(String),
    #[error("invalid diagram JSON: {0}")]
    Json(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Z(Phase),
    X(Phase),
    H,
    In(usize),
    Out(usize),
}

impl NodeKind {
    pub fn is_spider(&self) -> bool {
        matches!(self, NodeKind::Z(_) | NodeKind::X(_))
    }

    pub fn is_boundary(&self) -> bool {
        matches!(self, NodeKind::In(_) | NodeKind::Out(_))
    }

    pub fn phase(&self) -> Option<Phase> {
        match *self {
            NodeKind::Z(p) | NodeKind::X(p) => Some(p),
            _ => None,
        }
    }

    /// Same spider colour.
    pub fn same_color(&self, other: &NodeKind) -> bool {
        matches!((self, other), (NodeKind::Z(_), NodeKind::Z(_)) | (NodeKind::X(_), NodeKind::X(_)))
    }

    /// Spiders of different colours.
    pub fn opposite_color(&self, other: &NodeKind) -> bool {
        matches!((self, other), (NodeKind::Z(_), NodeKind::X(_)) | (NodeKind::X(_), NodeKind::Z(_)))
    }

    pub fn with_phase(&self, p: Phase) -> NodeKind {
        match self {
            NodeKind::Z(_) => NodeKind::Z(p),
            NodeKind::X(_) => NodeKind::X(p),
            other => *other,
        }
    }

    /// Swap Z and X, keeping the phase.
    pub fn flipped(&self) -> NodeKind {
        match *self {
            NodeKind::Z(p) => NodeKind::X(p),
            NodeKind::X(p) => NodeKind::Z(p),
            other => other,
        }
    }
}

/// Node id paired with its kind, as seen from outside the diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZxNode {
    pub id: usize,
    pub kind: NodeKind,
}

/// Summary counts used in CLI reports.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct DiagramStats {
    pub nodes: usize,
    pub edges: usize,
    pub spiders: usize,
    pub hadamards: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZxDiagram {
    nodes: BTreeMap<usize, NodeKind>,
    edges: Vec<(usize, usize)>,
    scalar: C64,
    next_id: usize,
}

impl Default for ZxDiagram {
    fn default() -> Self {
        Self::new()
    }
}

fn norm_edge(a: usize, b: usize) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl ZxDiagram {
    pub fn new() -> Self {
        ZxDiagram { nodes: BTreeMap::new(), edges: Vec::new(), scalar: C64::new(1.0, 0.0), next_id: 0 }
    }

    /// `n` bare wires.
    pub fn identity(n: usize) -> Self {
        let mut d = Self::new();
        for q in 0..n {
            let i = d.add_node(NodeKind::In(q));
            let o = d.add_node(NodeKind::Out(q));
            d.add_edge(i, o);
        }
        d
    }

    pub fn add_node(&mut self, kind: NodeKind) -> usize {
        let id = self.next_id;
        self.nodes.insert(id, kind);
        self.next_id += 1;
        id
    }

    /// Insert with a caller-chosen id. Returns false if the id is taken.
    pub fn add_node_with_id(&mut self, id: usize, kind: NodeKind) -> bool {
        if self.nodes.contains_key(&id) {
            return false;
        }
        self.nodes.insert(id, kind);
        self.next_id = self.next_id.max(id + 1);
        true
    }

    /// Removes the node and all incident edges.
    pub fn remove_node(&mut self, id: usize) -> Option<NodeKind> {
        let k = self.nodes.remove(&id)?;
        self.edges.retain(|&(a, b)| a != id && b != id);
        Some(k)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        debug_assert!(self.nodes.contains_key(&a) && self.nodes.contains_key(&b));
        self.edges.push(norm_edge(a, b));
    }

    /// Removes one copy of the edge; false if absent.
    pub fn remove_edge(&mut self, a: usize, b: usize) -> bool {
        let e = norm_edge(a, b);
        match self.edges.iter().position(|&x| x == e) {
            Some(i) => {
                self.edges.remove(i);
                true
            }
            None => false,
        }
    }

    /// Removes every self-loop on `v`, returning how many there were.
    pub fn remove_self_loops(&mut self, v: usize) -> usize {
        let before = self.edges.len();
        self.edges.retain(|&(a, b)| !(a == v && b == v));
        before - self.edges.len()
    }

    pub fn kind(&self, id: usize) -> Option<NodeKind> {
        self.nodes.get(&id).copied()
    }

    pub fn set_kind(&mut self, id: usize, kind: NodeKind) {
        if let Some(k) = self.nodes.get_mut(&id) {
            *k = kind;
        }
    }

    pub fn contains(&self, id: usize) -> bool {
        self.nodes.contains_key(&id)
    }

    pub fn nodes(&self) -> impl Iterator<Item = ZxNode> + '_ {
        self.nodes.iter().map(|(&id, &kind)| ZxNode { id, kind })
    }

    pub fn node_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.nodes.keys().copied()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn next_id(&self) -> usize {
        self.next_id
    }

    pub fn scalar(&self) -> C64 {
        self.scalar
    }

    pub fn set_scalar(&mut self, s: C64) {
        self.scalar = s;
    }

    pub fn mul_scalar(&mut self, s: C64) {
        self.scalar *= s;
    }

    /// Number of edges joining `a` and `b` (self-loops when `a == b`).
    pub fn edge_multiplicity(&self, a: usize, b: usize) -> usize {
        let e = norm_edge(a, b);
        self.edges.iter().filter(|&&x| x == e).count()
    }

    /// Neighbour list with multiplicity; a self-loop lists `v` twice.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            if a == v {
                out.push(b);
            }
            if b == v {
                out.push(a);
            }
        }
        out
    }

    /// Distinct neighbours other than `v` itself, ascending.
    pub fn distinct_neighbors(&self, v: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = self.neighbors(v).into_iter().filter(|&u| u != v).collect();
        set.into_iter().collect()
    }

    /// Degree, counting a self-loop twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|&(a, b)| (a == v) as usize + (b == v) as usize).sum()
    }

    fn boundary_ids(&self, want_input: bool) -> Vec<usize> {
        let mut v: Vec<(usize, usize)> = self
            .nodes
            .iter()
            .filter_map(|(&id, k)| match (*k, want_input) {
                (NodeKind::In(p), true) | (NodeKind::Out(p), false) => Some((p, id)),
                _ => None,
            })
            .collect();
        v.sort();
        v.into_iter().map(|(_, id)| id).collect()
    }

    /// Input node ids ordered by position.
    pub fn inputs(&self) -> Vec<usize> {
        self.boundary_ids(true)
    }

    /// Output node ids ordered by position.
    pub fn outputs(&self) -> Vec<usize> {
        self.boundary_ids(false)
    }

    pub fn n_inputs(&self) -> usize {
        self.nodes.values().filter(|k| matches!(k, NodeKind::In(_))).count()
    }

    pub fn n_outputs(&self) -> usize {
        self.nodes.values().filter(|k| matches!(k, NodeKind::Out(_))).count()
    }

    pub fn stats(&self) -> DiagramStats {
        DiagramStats {
            nodes: self.nodes.len(),
            edges: self.edges.len(),
            spiders: self.nodes.values().filter(|k| k.is_spider()).count(),
            hadamards: self.nodes.values().filter(|k| matches!(k, NodeKind::H)).count(),
        }
    }

    /// Connected components as sorted id lists, ordered by smallest id.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut adj: BTreeMap<usize, Vec<usize>> = self.nodes.keys().map(|&k| (k, Vec::new())).collect();
        for &(a, b) in &self.edges {
            if let Some(v) = adj.get_mut(&a) {
                v.push(b);
            }
            if let Some(v) = adj.get_mut(&b) {
                v.push(a);
            }
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.nodes.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &u in &adj[&v] {
                    if seen.insert(u) {
                        comp.push(u);
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Checks edge endpoints, degree constraints and boundary positions.
    pub fn validate(&self) -> Result<(), ZxError> {
        let bad = |m: String| Err(ZxError::Malformed(m));
        for &(a, b) in &self.edges {
            if !self.nodes.contains_key(&a) || !self.nodes.contains_key(&b) {
                return bad(format!("edge ({a}, {b}) has a missing endpoint"));
            }
        }
        for (&id, k) in &self.nodes {
            let deg = self.degree(id);
            match k {
                NodeKind::H if deg != 2 => return bad(format!("hadamard node {id} has degree {deg}")),
                NodeKind::In(_) | NodeKind::Out(_) if deg != 1 => {
                    return bad(format!("boundary node {id} has degree {deg}"))
                }
                _ => {}
            }
        }
        for (label, want_input) in [("input", true), ("output", false)] {
            let mut pos: Vec<usize> = self
                .nodes
                .values()
                .filter_map(|k| match (*k, want_input) {
                    (NodeKind::In(p), true) | (NodeKind::Out(p), false) => Some(p),
                    _ => None,
                })
                .collect();
            pos.sort_unstable();
            if pos.iter().enumerate().any(|(i, &p)| i != p) {
                return bad(format!("{label} positions {pos:?} are not 0..n-1"));
            }
        }
        Ok(())
    }

    /// Node ids sorted, edges as sorted `(min, max)` pairs.
    pub fn canonical_edges(&self) -> Vec<(usize, usize)> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }

    /// Same nodes, kinds, edge multiset and scalar (bitwise).
    pub fn structurally_eq(&self, other: &ZxDiagram) -> bool {
        self.nodes == other.nodes && self.canonical_edges() == other.canonical_edges() && self.scalar == other.scalar
    }

    /// Relabel node ids through `f` (must be injective). Edge order is kept.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> ZxDiagram {
        let mut d = ZxDiagram::new();
        for (&id, &k) in &self.nodes {
            assert!(d.add_node_with_id(f(id), k), "relabelling must be injective");
        }
        for &(a, b) in &self.edges {
            d.add_edge(f(a), f(b));
        }
        d.scalar = self.scalar;
        d
    }

    /// Isomorphism test up to node ids. Boundaries must map to boundaries
    /// at the same position; the scalar must agree to `tol`.
    pub fn isomorphic(&self, other: &ZxDiagram, tol: f64) -> bool {
        if self.nodes.len() != other.nodes.len()
            || self.edges.len() != other.edges.len()
            || (self.scalar - other.scalar).norm() > tol
        {
            return false;
        }
        let a: Vec<usize> = self.nodes.keys().copied().collect();
        let b_ids: Vec<usize> = other.nodes.keys().copied().collect();
        let mut map: BTreeMap<usize, usize> = BTreeMap::new();
        let mut used = BTreeSet::new();
        self.iso_extend(other, &a, &b_ids, 0, &mut map, &mut used)
    }

    fn iso_extend(
        &self,
        other: &ZxDiagram,
        a: &[usize],
        b: &[usize],
        i: usize,
        map: &mut BTreeMap<usize, usize>,
        used: &mut BTreeSet<usize>,
    ) -> bool {
        if i == a.len() {
            return true;
        }
        let u = a[i];
        let ku = self.nodes[&u];
        for &w in b {
            if used.contains(&w) || other.nodes[&w] != ku || other.degree(w) != self.degree(u) {
                continue;
            }
            // edge multiplicities to already-mapped nodes, and self-loops
            let consistent = self.edge_multiplicity(u, u) == other.edge_multiplicity(w, w)
                && map.iter().all(|(&x, &y)| self.edge_multiplicity(u, x) == other.edge_multiplicity(w, y));
            if !consistent {
                continue;
            }
            map.insert(u, w);
            used.insert(w);
            if self.iso_extend(other, a, b, i + 1, map, used) {
                return true;
            }
            map.remove(&u);
            used.remove(&w);
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_counts_self_loops_twice() {
        let mut d = ZxDiagram::new();
        let z = d.add_node(NodeKind::Z(Phase::zero()));
        d.add_edge(z, z);
        assert_eq!(d.degree(z), 2);
        assert_eq!(d.neighbors(z), vec![z, z]);
        assert!(d.distinct_neighbors(z).is_empty());
        assert_eq!(d.remove_self_loops(z), 1);
    }

    #[test]
    fn validate_rejects_bad_degrees_and_positions() {
        let mut d = ZxDiagram::identity(1);
        assert!(d.validate().is_ok());
        let h = d.add_node(NodeKind::H);
        assert!(d.validate().is_err());
        d.remove_node(h);
        d.add_node(NodeKind::In(3));
        assert!(d.validate().is_err());
    }

    #[test]
    fn components_and_isomorphism() {
        let mut a = ZxDiagram::new();
        let z = a.add_node(NodeKind::Z(Phase::pi()));
        let x = a.add_node(NodeKind::X(Phase::zero()));
        a.add_edge(z, x);
        a.add_edge(z, x);
        let lone = a.add_node(NodeKind::Z(Phase::zero()));
        assert_eq!(a.components(), vec![vec![z, x], vec![lone]]);

        let b = a.relabel(|i| 10 - i);
        assert!(a.isomorphic(&b, 0.0));
        let mut c = b.clone();
        c.remove_edge(10 - z, 10 - x);
        assert!(!a.isomorphic(&c, 0.0));
    }

    #[test]
    fn isomorphism_respects_boundary_positions() {
        let a = ZxDiagram::identity(2);
        let mut b = ZxDiagram::new();
        let i0 = b.add_node(NodeKind::In(0));
        let i1 = b.add_node(NodeKind::In(1));
        let o0 = b.add_node(NodeKind::Out(0));
        let o1 = b.add_node(NodeKind::Out(1));
        b.add_edge(i0, o1);
        b.add_edge(i1, o0);
        assert!(!a.isomorphic(&b, 0.0));
    }
}
