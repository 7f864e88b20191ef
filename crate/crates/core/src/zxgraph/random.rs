// SPDX-License-Identifier: Apache-2.0

//! Seeded random diagrams for property tests. Small gadgets, some of them
//! planted rewrite sites, are glued by pairing their free legs at random.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{NodeKind, ZxDiagram};
use crate::phase::Phase;

#[derive(Clone, Debug)]
pub struct RandomConfig {
    pub max_inputs: usize,
    pub max_outputs: usize,
    pub min_gadgets: usize,
    pub max_gadgets: usize,
    /// Chance of putting a Hadamard node on each glued edge.
    pub hadamard_prob: f64,
}

impl Default for RandomConfig {
    fn default() -> Self {
        RandomConfig { max_inputs: 2, max_outputs: 2, min_gadgets: 2, max_gadgets: 6, hadamard_prob: 0.15 }
    }
}

fn random_phase<R: Rng>(rng: &mut R) -> Phase {
    match rng.random_range(0..6) {
        0 | 1 => Phase::zero(),
        2 => Phase::pi(),
        _ => Phase::new(rng.random_range(0..8), 4).expect("nonzero denominator"),
    }
}

fn random_spider<R: Rng>(rng: &mut R, phase: Phase) -> NodeKind {
    if rng.random_bool(0.5) {
        NodeKind::Z(phase)
    } else {
        NodeKind::X(phase)
    }
}

fn any_spider<R: Rng>(rng: &mut R) -> NodeKind {
    let p = random_phase(rng);
    random_spider(rng, p)
}

fn opposite(k: NodeKind, phase: Phase) -> NodeKind {
    match k {
        NodeKind::Z(_) => NodeKind::X(phase),
        _ => NodeKind::Z(phase),
    }
}

fn push_legs(legs: &mut Vec<usize>, v: usize, n: usize) {
    legs.extend(std::iter::repeat_n(v, n));
}

fn add_gadget<R: Rng>(rng: &mut R, d: &mut ZxDiagram, legs: &mut Vec<usize>) {
    match rng.random_range(0..10) {
        // plain spider
        0 => {
            let k = any_spider(rng);
            let v = d.add_node(k);
            let n = rng.random_range(1..=4);
            push_legs(legs, v, n);
        }
        // degree-2 π spider beside an opposite spider
        1 => {
            let vk = any_spider(rng);
            let v = d.add_node(vk);
            let p = d.add_node(opposite(vk, Phase::pi()));
            d.add_edge(p, v);
            legs.push(p);
            let n = rng.random_range(1..=3);
            push_legs(legs, v, n);
        }
        // 0 or π state on an opposite spider
        2 => {
            let vk = any_spider(rng);
            let v = d.add_node(vk);
            let ph = if rng.random_bool(0.5) { Phase::pi() } else { Phase::zero() };
            let p = d.add_node(opposite(vk, ph));
            d.add_edge(p, v);
            let n = rng.random_range(0..=3);
            push_legs(legs, v, n);
        }
        // Z and X joined twice
        3 => {
            let z = d.add_node(NodeKind::Z(random_phase(rng)));
            let x = d.add_node(NodeKind::X(random_phase(rng)));
            d.add_edge(z, x);
            d.add_edge(z, x);
            let (nz, nx) = (rng.random_range(0..=2), rng.random_range(0..=2));
            push_legs(legs, z, nz);
            push_legs(legs, x, nx);
        }
        // phase-free K_{2,2}
        4 => {
            let z: Vec<usize> = (0..2).map(|_| d.add_node(NodeKind::Z(Phase::zero()))).collect();
            let x: Vec<usize> = (0..2).map(|_| d.add_node(NodeKind::X(Phase::zero()))).collect();
            for &a in &z {
                for &b in &x {
                    d.add_edge(a, b);
                }
                legs.push(a);
            }
            legs.extend(&x);
        }
        // two adjacent Hadamards
        5 => {
            let h1 = d.add_node(NodeKind::H);
            let h2 = d.add_node(NodeKind::H);
            d.add_edge(h1, h2);
            legs.push(h1);
            legs.push(h2);
        }
        // spider wrapped in Hadamards
        6 => {
            let v = d.add_node(any_spider(rng));
            for _ in 0..rng.random_range(1..=3) {
                let h = d.add_node(NodeKind::H);
                d.add_edge(v, h);
                legs.push(h);
            }
        }
        // identity spider
        7 => {
            let v = d.add_node(random_spider(rng, Phase::zero()));
            push_legs(legs, v, 2);
        }
        // closed component
        8 => {
            let a = d.add_node(any_spider(rng));
            if rng.random_bool(0.7) {
                let b = d.add_node(any_spider(rng));
                for _ in 0..rng.random_range(1..=2) {
                    d.add_edge(a, b);
                }
            }
        }
        // same-colour pair
        _ => {
            let ak = any_spider(rng);
            let a = d.add_node(ak);
            let b = d.add_node(ak.with_phase(random_phase(rng)));
            for _ in 0..rng.random_range(1..=2) {
                d.add_edge(a, b);
            }
            let (na, nb) = (rng.random_range(1..=2), rng.random_range(0..=2));
            push_legs(legs, a, na);
            push_legs(legs, b, nb);
        }
    }
}

/// A valid diagram within the evaluator caps for the default config.
pub fn random_diagram<R: Rng>(rng: &mut R, cfg: &RandomConfig) -> ZxDiagram {
    let mut d = ZxDiagram::new();
    let mut legs = Vec::new();
    for q in 0..rng.random_range(0..=cfg.max_inputs) {
        legs.push(d.add_node(NodeKind::In(q)));
    }
    for q in 0..rng.random_range(0..=cfg.max_outputs) {
        legs.push(d.add_node(NodeKind::Out(q)));
    }
    for _ in 0..rng.random_range(cfg.min_gadgets..=cfg.max_gadgets) {
        add_gadget(rng, &mut d, &mut legs);
    }
    if legs.len() % 2 == 1 {
        let k = any_spider(rng);
        legs.push(d.add_node(k));
    }
    legs.shuffle(rng);
    for pair in legs.chunks(2) {
        let (a, b) = (pair[0], pair[1]);
        if rng.random_bool(cfg.hadamard_prob) {
            let h = d.add_node(NodeKind::H);
            d.add_edge(a, h);
            d.add_edge(h, b);
        } else {
            d.add_edge(a, b);
        }
    }
    d
}
