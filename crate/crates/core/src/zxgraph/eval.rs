// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex;
use num_traits::{One, Zero};

use super::{NodeKind, ZxDiagram, ZxError};
use crate::qcore::ComplexMatrix;
use crate::scalar::Real;
use crate::C64;

pub const MAX_EVAL_BOUNDARIES: usize = 10;
pub const MAX_EVAL_NODES: usize = 64;
/// Largest intermediate tensor rank the greedy contraction will build.
const MAX_RANK: usize = 22;

/// Dense tensor over qubit legs; `labels[0]` is the most significant bit.
#[derive(Clone, Debug)]
struct Tensor<T: Real> {
    labels: Vec<usize>,
    data: Vec<Complex<T>>,
}

impl<T: Real> Tensor<T> {
    fn rank(&self) -> usize {
        self.labels.len()
    }

    fn bit(idx: usize, pos: usize, rank: usize) -> usize {
        (idx >> (rank - 1 - pos)) & 1
    }

    /// Reorder legs to `order` (a permutation of `self.labels`).
    fn permute(&self, order: &[usize]) -> Tensor<T> {
        let r = self.rank();
        let src: Vec<usize> =
            order.iter().map(|l| self.labels.iter().position(|x| x == l).expect("label present")).collect();
        if src.iter().enumerate().all(|(i, &s)| i == s) {
            return self.clone();
        }
        let mut data = vec![Complex::zero(); self.data.len()];
        for (new_idx, slot) in data.iter_mut().enumerate() {
            let mut old = 0usize;
            for (p, &s) in src.iter().enumerate() {
                old |= Self::bit(new_idx, p, r) << (r - 1 - s);
            }
            *slot = self.data[old];
        }
        Tensor { labels: order.to_vec(), data }
    }

    /// Sum over every label that occurs twice.
    fn trace_repeated(mut self) -> Tensor<T> {
        loop {
            let mut pair = None;
            'find: for i in 0..self.labels.len() {
                for j in i + 1..self.labels.len() {
                    if self.labels[i] == self.labels[j] {
                        pair = Some((i, j));
                        break 'find;
                    }
                }
            }
            let Some((i, j)) = pair else { return self };
            let r = self.rank();
            let labels: Vec<usize> =
                self.labels.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &l)| l).collect();
            let mut data = vec![Complex::zero(); 1 << (r - 2)];
            for (idx, &v) in self.data.iter().enumerate() {
                if Self::bit(idx, i, r) != Self::bit(idx, j, r) {
                    continue;
                }
                let mut out = 0usize;
                for k in 0..r {
                    if k != i && k != j {
                        out = (out << 1) | Self::bit(idx, k, r);
                    }
                }
                data[out] = data[out] + v;
            }
            self = Tensor { labels, data };
        }
    }

    fn contract(&self, other: &Tensor<T>) -> Tensor<T> {
        let shared: Vec<usize> = self.labels.iter().filter(|l| other.labels.contains(l)).copied().collect();
        let free_a: Vec<usize> = self.labels.iter().filter(|l| !shared.contains(l)).copied().collect();
        let free_b: Vec<usize> = other.labels.iter().filter(|l| !shared.contains(l)).copied().collect();
        let a = self.permute(&[free_a.clone(), shared.clone()].concat());
        let b = other.permute(&[shared.clone(), free_b.clone()].concat());
        let (m, k, n) = (1usize << free_a.len(), 1usize << shared.len(), 1usize << free_b.len());
        let mut data = vec![Complex::zero(); m * n];
        for i in 0..m {
            for s in 0..k {
                let av = a.data[i * k + s];
                if av.is_zero() {
                    continue;
                }
                let row = &b.data[s * n..(s + 1) * n];
                let out = &mut data[i * n..(i + 1) * n];
                for (o, bv) in out.iter_mut().zip(row) {
                    *o = *o + av * bv;
                }
            }
        }
        Tensor { labels: [free_a, free_b].concat(), data }
    }
}

fn spider_tensor<T: Real>(kind: NodeKind, legs: Vec<usize>) -> Tensor<T> {
    let k = legs.len();
    let dim = 1usize << k;
    let mut data = vec![Complex::zero(); dim];
    match kind {
        NodeKind::Z(a) => {
            data[0] = Complex::one();
            data[dim - 1] = data[dim - 1] + a.cis::<T>();
        }
        NodeKind::X(a) => {
            let e = a.cis::<T>();
            let norm = T::lit(2.0).powf(-T::lit(k as f64) / T::lit(2.0));
            for (idx, slot) in data.iter_mut().enumerate() {
                let sign = if idx.count_ones() % 2 == 0 { T::one() } else { -T::one() };
                *slot = (Complex::<T>::one() + e.scale(sign)).scale(norm);
            }
        }
        NodeKind::H => {
            let h = T::FRAC_1_SQRT_2();
            data = vec![Complex::new(h, T::zero()), Complex::new(h, T::zero()), Complex::new(h, T::zero()), Complex::new(-h, T::zero())];
        }
        NodeKind::In(_) | NodeKind::Out(_) => {
            data = vec![Complex::one(), Complex::zero(), Complex::zero(), Complex::one()];
        }
    }
    Tensor { labels: legs, data }
}

/// Linear map denoted by `d`, a `2^m × 2^n` matrix (outputs index rows),
/// multiplied by `d.scalar()`.
pub fn eval_diagram<T: Real>(d: &ZxDiagram) -> Result<ComplexMatrix<T>, ZxError> {
    d.validate()?;
    let (n, m) = (d.n_inputs(), d.n_outputs());
    let too_large = || ZxError::TooLarge {
        boundaries: n + m,
        nodes: d.node_count(),
        max_boundaries: MAX_EVAL_BOUNDARIES,
        max_nodes: MAX_EVAL_NODES,
    };
    if n + m > MAX_EVAL_BOUNDARIES || d.node_count() > MAX_EVAL_NODES {
        return Err(too_large());
    }
    let n_edges = d.edges().len();
    let open_label = |id: usize| n_edges + id;

    let mut tensors: Vec<Tensor<T>> = Vec::with_capacity(d.node_count());
    for node in d.nodes() {
        let mut legs = Vec::new();
        for (e, &(a, b)) in d.edges().iter().enumerate() {
            if a == node.id {
                legs.push(e);
            }
            if b == node.id {
                legs.push(e);
            }
        }
        if node.kind.is_boundary() {
            legs.push(open_label(node.id));
        }
        if legs.len() > MAX_RANK {
            return Err(too_large());
        }
        tensors.push(spider_tensor::<T>(node.kind, legs).trace_repeated());
    }

    while tensors.len() > 1 {
        // connected pair with the smallest result, else the two smallest tensors
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for i in 0..tensors.len() {
            for j in i + 1..tensors.len() {
                let s = tensors[i].labels.iter().filter(|l| tensors[j].labels.contains(l)).count();
                if s == 0 {
                    continue;
                }
                let r = tensors[i].rank() + tensors[j].rank() - 2 * s;
                let cost = tensors[i].data.len() + tensors[j].data.len();
                if best.is_none_or(|(_, _, br, bc)| (r, cost) < (br, bc)) {
                    best = Some((i, j, r, cost));
                }
            }
        }
        let (i, j) = match best {
            Some((i, j, r, _)) => {
                if r > MAX_RANK {
                    return Err(too_large());
                }
                (i, j)
            }
            None => {
                let mut idx: Vec<usize> = (0..tensors.len()).collect();
                idx.sort_by_key(|&k| (tensors[k].rank(), k));
                let (a, b) = (idx[0].min(idx[1]), idx[0].max(idx[1]));
                if tensors[a].rank() + tensors[b].rank() > MAX_RANK {
                    return Err(too_large());
                }
                (a, b)
            }
        };
        let b = tensors.swap_remove(j);
        let a = tensors.swap_remove(i);
        tensors.push(a.contract(&b).trace_repeated());
    }

    let scalar = Complex::new(T::lit(d.scalar().re), T::lit(d.scalar().im));
    let rows = 1usize << m;
    let cols = 1usize << n;
    let Some(t) = tensors.pop() else {
        return Ok(ComplexMatrix::from_vec(1, 1, vec![scalar]));
    };
    let order: Vec<usize> = d.outputs().into_iter().chain(d.inputs()).map(open_label).collect();
    let t = t.permute(&order);
    let data = t.data.into_iter().map(|v| v * scalar).collect();
    Ok(ComplexMatrix::from_vec(rows, cols, data))
}

/// Value of a diagram with no boundaries.
pub fn eval_scalar(d: &ZxDiagram) -> Result<C64, ZxError> {
    if d.n_inputs() + d.n_outputs() != 0 {
        return Err(ZxError::Malformed("scalar evaluation needs a closed diagram".into()));
    }
    Ok(eval_diagram::<f64>(d)?[(0, 0)])
}
