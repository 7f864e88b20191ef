// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use super::{RewriteStep, RuleError, RuleId};
use crate::phase::Phase;
use crate::tol::EQ_TOL;
use crate::zxgraph::{eval_diagram, eval_scalar, NodeKind, ZxDiagram, ZxError, MAX_EVAL_NODES};
use crate::C64;

fn spider(d: &ZxDiagram, v: usize) -> Option<NodeKind> {
    d.kind(v).filter(|k| k.is_spider())
}

fn has_loop(d: &ZxDiagram, v: usize) -> bool {
    d.edge_multiplicity(v, v) > 0
}

/// `neighbors(v)` with one occurrence of `x` taken out.
fn neighbors_except_one(d: &ZxDiagram, v: usize, x: usize) -> Vec<usize> {
    let mut nb = d.neighbors(v);
    if let Some(i) = nb.iter().position(|&u| u == x) {
        nb.remove(i);
    }
    nb
}

/// The single neighbour of a degree-2 node other than `x`.
fn other_end(d: &ZxDiagram, h: usize, x: usize) -> usize {
    neighbors_except_one(d, h, x)[0]
}

fn is_hh(d: &ZxDiagram, h1: usize, h2: usize) -> bool {
    h1 != h2
        && d.kind(h1) == Some(NodeKind::H)
        && d.kind(h2) == Some(NodeKind::H)
        && d.edge_multiplicity(h1, h2) == 1
}

fn is_flip(d: &ZxDiagram, v: usize) -> bool {
    if spider(d, v).is_none() || has_loop(d, v) {
        return false;
    }
    let nb = d.neighbors(v);
    let hs: BTreeSet<usize> = nb.iter().copied().collect();
    if nb.is_empty() || hs.len() != nb.len() || nb.iter().any(|&h| d.kind(h) != Some(NodeKind::H)) {
        return false;
    }
    nb.iter().all(|&h| {
        let w = other_end(d, h, v);
        w != v && !hs.contains(&w)
    })
}

/// `p` is a state or degree-2 spider with phase `want`, attached by a single
/// edge to a loop-free spider `v` of the other colour.
fn pi_site(d: &ZxDiagram, p: usize, v: usize, want: Phase, p_degree: usize) -> bool {
    let (Some(pk), Some(vk)) = (spider(d, p), spider(d, v)) else { return false };
    p != v
        && pk.phase() == Some(want)
        && pk.opposite_color(&vk)
        && d.degree(p) == p_degree
        && !has_loop(d, p)
        && !has_loop(d, v)
        && d.edge_multiplicity(p, v) == 1
}

fn is_bialgebra(d: &ZxDiagram, site: &[usize]) -> bool {
    let [z1, z2, x1, x2] = *site else { return false };
    let motif: BTreeSet<usize> = site.iter().copied().collect();
    if motif.len() != 4 {
        return false;
    }
    let zero = Phase::zero();
    let ok_node = |v: usize, k: NodeKind| d.kind(v) == Some(k) && d.degree(v) == 3 && !has_loop(d, v);
    if !(ok_node(z1, NodeKind::Z(zero))
        && ok_node(z2, NodeKind::Z(zero))
        && ok_node(x1, NodeKind::X(zero))
        && ok_node(x2, NodeKind::X(zero)))
    {
        return false;
    }
    for z in [z1, z2] {
        for x in [x1, x2] {
            if d.edge_multiplicity(z, x) != 1 {
                return false;
            }
        }
    }
    site.iter().all(|&v| d.neighbors(v).iter().filter(|u| !motif.contains(u)).count() == 1)
        && d.edge_multiplicity(z1, z2) == 0
        && d.edge_multiplicity(x1, x2) == 0
}

fn is_closed_component(d: &ZxDiagram, site: &[usize]) -> bool {
    if site.is_empty() || site.len() > MAX_EVAL_NODES {
        return false;
    }
    let mut sorted = site.to_vec();
    sorted.sort_unstable();
    d.components().contains(&sorted)
        && site.iter().all(|&v| d.kind(v).is_some_and(|k| !k.is_boundary()))
}

/// Whether `rule` applies at `site`.
pub fn is_match(d: &ZxDiagram, rule: RuleId, site: &[usize]) -> bool {
    match (rule, site) {
        (RuleId::SpiderFuse, &[u]) => spider(d, u).is_some() && has_loop(d, u),
        (RuleId::SpiderFuse, &[u, v]) => {
            u != v
                && matches!((spider(d, u), spider(d, v)), (Some(a), Some(b)) if a.same_color(&b))
                && d.edge_multiplicity(u, v) > 0
        }
        (RuleId::IdentityRemove, &[v]) => {
            spider(d, v).is_some_and(|k| k.phase() == Some(Phase::zero())) && d.degree(v) == 2 && !has_loop(d, v)
        }
        (RuleId::ColorChange, &[h1, h2]) => is_hh(d, h1, h2),
        (RuleId::ColorChange, &[v]) => is_flip(d, v),
        (RuleId::PiCommute, &[p, v]) => pi_site(d, p, v, Phase::pi(), 2),
        (RuleId::PiCopy, &[p, v]) => pi_site(d, p, v, Phase::pi(), 1),
        (RuleId::CopyRule, &[p, v]) => pi_site(d, p, v, Phase::zero(), 1),
        (RuleId::HopfCancel, &[a, b]) => {
            matches!((spider(d, a), spider(d, b)), (Some(x), Some(y)) if x.opposite_color(&y))
                && d.edge_multiplicity(a, b) >= 2
        }
        (RuleId::Bialgebra, s) => is_bialgebra(d, s),
        (RuleId::ScalarD, s) => is_closed_component(d, s),
        _ => false,
    }
}

/// All sites of `rule` in `d`, in ascending lexicographic order.
pub fn find_matches(d: &ZxDiagram, rule: RuleId) -> Vec<Vec<usize>> {
    let ids: Vec<usize> = d.node_ids().collect();
    let mut out: Vec<Vec<usize>> = Vec::new();
    match rule {
        RuleId::SpiderFuse => {
            for &u in &ids {
                out.push(vec![u]);
                for v in d.distinct_neighbors(u) {
                    if v > u {
                        out.push(vec![u, v]);
                    }
                }
            }
        }
        RuleId::IdentityRemove => out.extend(ids.iter().map(|&v| vec![v])),
        RuleId::ColorChange => {
            for &u in &ids {
                out.push(vec![u]);
                for v in d.distinct_neighbors(u) {
                    if v > u {
                        out.push(vec![u, v]);
                    }
                }
            }
        }
        RuleId::PiCommute | RuleId::PiCopy | RuleId::CopyRule => {
            for &p in &ids {
                for v in d.distinct_neighbors(p) {
                    out.push(vec![p, v]);
                }
            }
        }
        RuleId::HopfCancel => {
            for &u in &ids {
                for v in d.distinct_neighbors(u) {
                    if v > u {
                        out.push(vec![u, v]);
                    }
                }
            }
        }
        RuleId::Bialgebra => {
            for &z1 in &ids {
                if d.kind(z1) != Some(NodeKind::Z(Phase::zero())) {
                    continue;
                }
                let xs = d.distinct_neighbors(z1);
                for (i, &x1) in xs.iter().enumerate() {
                    for &x2 in &xs[i + 1..] {
                        for z2 in d.distinct_neighbors(x1) {
                            if z2 > z1 && d.edge_multiplicity(z2, x2) > 0 {
                                out.push(vec![z1, z2, x1, x2]);
                            }
                        }
                    }
                }
            }
        }
        RuleId::ScalarD => out.extend(d.components()),
    }
    out.retain(|s| is_match(d, rule, s));
    out.sort();
    out.dedup();
    out
}

fn sqrt2_pow(k: i32) -> f64 {
    SQRT_2.powi(k)
}

/// Performs the surgery; `site` must already be a match.
fn rewrite(d: &mut ZxDiagram, rule: RuleId, site: &[usize]) -> Result<(Vec<usize>, C64), ZxError> {
    let one = C64::new(1.0, 0.0);
    match (rule, site) {
        (RuleId::SpiderFuse, &[u]) => {
            d.remove_self_loops(u);
            Ok((vec![], one))
        }
        (RuleId::SpiderFuse, &[u, v]) => {
            let (ku, kv) = (d.kind(u).unwrap(), d.kind(v).unwrap());
            d.set_kind(u, ku.with_phase(ku.phase().unwrap() + kv.phase().unwrap()));
            let moved: Vec<usize> = d.neighbors(v).into_iter().filter(|&w| w != u && w != v).collect();
            d.remove_node(v);
            for w in moved {
                d.add_edge(u, w);
            }
            // extra parallel edges became loops, which are identities
            d.remove_self_loops(u);
            Ok((vec![], one))
        }
        (RuleId::IdentityRemove, &[v]) => {
            let nb = d.neighbors(v);
            d.remove_node(v);
            let (a, b) = (nb[0], nb[1]);
            if !(a == b && d.kind(a).is_some_and(|k| k.is_spider())) {
                d.add_edge(a, b);
            }
            Ok((vec![], one))
        }
        (RuleId::ColorChange, &[h1, h2]) => {
            let a = other_end(d, h1, h2);
            let b = other_end(d, h2, h1);
            d.remove_node(h1);
            d.remove_node(h2);
            if !(a == b && d.kind(a).is_some_and(|k| k.is_spider())) {
                d.add_edge(a, b);
            }
            Ok((vec![], one))
        }
        (RuleId::ColorChange, &[v]) => {
            let hs = d.neighbors(v);
            let ends: Vec<usize> = hs.iter().map(|&h| other_end(d, h, v)).collect();
            for &h in &hs {
                d.remove_node(h);
            }
            for w in ends {
                d.add_edge(v, w);
            }
            d.set_kind(v, d.kind(v).unwrap().flipped());
            Ok((vec![], one))
        }
        (RuleId::PiCommute, &[p, v]) => {
            let pk = d.kind(p).unwrap();
            let vk = d.kind(v).unwrap();
            let alpha = vk.phase().unwrap();
            let w = other_end(d, p, v);
            let others = neighbors_except_one(d, v, p);
            d.remove_node(p);
            let mut produced = Vec::new();
            for &u in &others {
                d.remove_edge(v, u);
                let q = d.add_node(pk);
                d.add_edge(v, q);
                d.add_edge(q, u);
                produced.push(q);
            }
            d.add_edge(v, w);
            d.set_kind(v, vk.with_phase(-alpha));
            Ok((produced, alpha.cis::<f64>()))
        }
        (RuleId::PiCopy | RuleId::CopyRule, &[p, v]) => {
            let pk = d.kind(p).unwrap();
            let alpha = d.kind(v).unwrap().phase().unwrap();
            let deg = d.degree(v) as i32;
            let others = neighbors_except_one(d, v, p);
            d.remove_node(p);
            d.remove_node(v);
            let mut produced = Vec::new();
            for u in others {
                let q = d.add_node(pk);
                d.add_edge(q, u);
                produced.push(q);
            }
            let norm = C64::new(sqrt2_pow(2 - deg), 0.0);
            let delta = if rule == RuleId::PiCopy { alpha.cis::<f64>() * norm } else { norm };
            Ok((produced, delta))
        }
        (RuleId::HopfCancel, &[a, b]) => {
            d.remove_edge(a, b);
            d.remove_edge(a, b);
            Ok((vec![], C64::new(0.5, 0.0)))
        }
        (RuleId::Bialgebra, &[z1, z2, x1, x2]) => {
            let motif = [z1, z2, x1, x2];
            let ext = |d: &ZxDiagram, v: usize| d.neighbors(v).into_iter().find(|u| !motif.contains(u)).unwrap();
            let (ez1, ez2, ex1, ex2) = (ext(d, z1), ext(d, z2), ext(d, x1), ext(d, x2));
            for v in motif {
                d.remove_node(v);
            }
            let xn = d.add_node(NodeKind::X(Phase::zero()));
            let zn = d.add_node(NodeKind::Z(Phase::zero()));
            d.add_edge(xn, ez1);
            d.add_edge(xn, ez2);
            d.add_edge(zn, ex1);
            d.add_edge(zn, ex2);
            d.add_edge(xn, zn);
            Ok((vec![xn, zn], C64::new(FRAC_1_SQRT_2, 0.0)))
        }
        (RuleId::ScalarD, s) => {
            let mut sub = ZxDiagram::new();
            for &v in s {
                sub.add_node_with_id(v, d.kind(v).unwrap());
            }
            for &(a, b) in d.edges() {
                if sub.contains(a) {
                    sub.add_edge(a, b);
                }
            }
            let value = eval_scalar(&sub)?;
            for &v in s {
                d.remove_node(v);
            }
            Ok((vec![], value))
        }
        _ => unreachable!("site shape checked by is_match"),
    }
}

/// Apply without the evaluator check.
pub fn apply_rule_unchecked(d: &ZxDiagram, rule: RuleId, site: &[usize]) -> Result<(ZxDiagram, RewriteStep), RuleError> {
    if !is_match(d, rule, site) {
        return Err(RuleError::NoMatch { rule, site: site.to_vec() });
    }
    let mut post = d.clone();
    let (produced, scalar_delta) = rewrite(&mut post, rule, site)?;
    post.mul_scalar(scalar_delta);
    Ok((post, RewriteStep { rule, site: site.to_vec(), produced, scalar_delta }))
}

/// Apply and, when both sides are within the evaluator caps, require
/// `max |eval(post) − eval(pre)| ≤ tol`.
pub fn apply_rule_with_tol(
    d: &ZxDiagram,
    rule: RuleId,
    site: &[usize],
    tol: f64,
) -> Result<(ZxDiagram, RewriteStep), RuleError> {
    let (post, step) = apply_rule_unchecked(d, rule, site)?;
    match (eval_diagram::<f64>(d), eval_diagram::<f64>(&post)) {
        (Ok(a), Ok(b)) => {
            let deviation = a.max_abs_diff(&b);
            if deviation.is_nan() || deviation > tol {
                return Err(RuleError::SoundnessViolation { rule, site: site.to_vec(), deviation });
            }
        }
        (Err(ZxError::TooLarge { .. }), _) | (_, Err(ZxError::TooLarge { .. })) => {}
        (Err(e), _) | (_, Err(e)) => return Err(e.into()),
    }
    Ok((post, step))
}

/// [`apply_rule_with_tol`] at the default semantic tolerance.
pub fn apply_rule(d: &ZxDiagram, rule: RuleId, site: &[usize]) -> Result<(ZxDiagram, RewriteStep), RuleError> {
    apply_rule_with_tol(d, rule, site, EQ_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Matrix;

    fn z(a: (i64, i64)) -> NodeKind {
        NodeKind::Z(Phase::new(a.0, a.1).unwrap())
    }

    fn x(a: (i64, i64)) -> NodeKind {
        NodeKind::X(Phase::new(a.0, a.1).unwrap())
    }

    /// in0 - k1 - k2 - ... - out0
    fn chain(kinds: &[NodeKind]) -> (ZxDiagram, Vec<usize>) {
        let mut d = ZxDiagram::new();
        let i = d.add_node(NodeKind::In(0));
        let mut prev = i;
        let mut ids = Vec::new();
        for &k in kinds {
            let v = d.add_node(k);
            d.add_edge(prev, v);
            prev = v;
            ids.push(v);
        }
        let o = d.add_node(NodeKind::Out(0));
        d.add_edge(prev, o);
        (d, ids)
    }

    fn ev(d: &ZxDiagram) -> Matrix {
        eval_diagram(d).unwrap()
    }

    #[test]
    fn fuse_adds_phases() {
        let (d, ids) = chain(&[z((1, 4)), z((1, 2))]);
        let (post, step) = apply_rule(&d, RuleId::SpiderFuse, &ids).unwrap();
        assert_eq!(post.kind(ids[0]), Some(z((3, 4))));
        assert!(!post.contains(ids[1]));
        assert_eq!(step.scalar_delta, C64::new(1.0, 0.0));
        assert!(ev(&post).approx_eq(&ev(&d), 1e-12));
    }

    #[test]
    fn fuse_drops_parallel_edges() {
        let mut d = ZxDiagram::new();
        let a = d.add_node(x((0, 1)));
        let b = d.add_node(x((1, 1)));
        d.add_edge(a, b);
        d.add_edge(a, b);
        d.add_edge(a, b);
        let (post, _) = apply_rule(&d, RuleId::SpiderFuse, &[a, b]).unwrap();
        assert_eq!(post.edge_count(), 0);
        assert_eq!(post.node_count(), 1);
    }

    #[test]
    fn colour_change_through_hadamards() {
        let a = (1, 3);
        let (d, ids) = chain(&[NodeKind::H, z(a), NodeKind::H]);
        let (post, _) = apply_rule(&d, RuleId::ColorChange, &[ids[1]]).unwrap();
        assert_eq!(post.kind(ids[1]), Some(x(a)));
        assert_eq!(post.stats().hadamards, 0);
        let (want, _) = chain(&[x(a)]);
        assert!(ev(&post).approx_eq(&ev(&want), 1e-12));
    }

    #[test]
    fn hadamard_pair_cancels() {
        let (d, ids) = chain(&[NodeKind::H, NodeKind::H]);
        let (post, _) = apply_rule(&d, RuleId::ColorChange, &ids).unwrap();
        assert!(post.isomorphic(&ZxDiagram::identity(1), 0.0));
    }

    #[test]
    fn identity_spider_removed() {
        for k in [z((0, 1)), x((0, 1))] {
            let (d, ids) = chain(&[k]);
            let (post, _) = apply_rule(&d, RuleId::IdentityRemove, &ids).unwrap();
            assert!(post.isomorphic(&ZxDiagram::identity(1), 0.0));
        }
    }

    #[test]
    fn pi_commute_scalar_and_phase() {
        let a = Phase::new(1, 3).unwrap();
        let (d, ids) = chain(&[x((1, 1)), NodeKind::Z(a)]);
        let (post, step) = apply_rule(&d, RuleId::PiCommute, &ids).unwrap();
        assert_eq!(post.kind(ids[1]), Some(NodeKind::Z(-a)));
        assert_eq!(step.produced.len(), 1);
        assert_eq!(post.kind(step.produced[0]), Some(x((1, 1))));
        assert!((step.scalar_delta - a.cis::<f64>()).norm() < 1e-15);
        // X(π) then Z(α) equals e^{iα} Z(−α) then X(π)
        assert!(ev(&post).approx_eq(&ev(&d), 1e-12));
    }

    #[test]
    fn state_copy_scalars() {
        for (ph, rule) in [((1, 1), RuleId::PiCopy), ((0, 1), RuleId::CopyRule)] {
            for legs in 0..4 {
                let mut d = ZxDiagram::new();
                let v = d.add_node(z((1, 4)));
                let p = d.add_node(x(ph));
                d.add_edge(p, v);
                for q in 0..legs {
                    let o = d.add_node(NodeKind::Out(q));
                    d.add_edge(v, o);
                }
                let (post, step) = apply_rule(&d, rule, &[p, v]).unwrap();
                assert_eq!(step.produced.len(), legs);
                let want = sqrt2_pow(1 - legs as i32);
                if rule == RuleId::CopyRule {
                    assert!((step.scalar_delta - C64::new(want, 0.0)).norm() < 1e-15);
                } else {
                    let e = Phase::new(1, 4).unwrap().cis::<f64>();
                    assert!((step.scalar_delta - e * want).norm() < 1e-15);
                }
                assert!(ev(&post).approx_eq(&ev(&d), 1e-12));
            }
        }
    }

    #[test]
    fn hopf_pair_halves() {
        let mut d = ZxDiagram::new();
        let i = d.add_node(NodeKind::In(0));
        let o = d.add_node(NodeKind::Out(0));
        let zz = d.add_node(z((1, 2)));
        let xx = d.add_node(x((1, 4)));
        d.add_edge(i, zz);
        d.add_edge(zz, xx);
        d.add_edge(zz, xx);
        d.add_edge(xx, o);
        let (post, step) = apply_rule(&d, RuleId::HopfCancel, &[zz, xx]).unwrap();
        assert_eq!(step.scalar_delta, C64::new(0.5, 0.0));
        assert_eq!(post.edge_multiplicity(zz, xx), 0);
    }

    #[test]
    fn bialgebra_four_to_two() {
        let mut d = ZxDiagram::new();
        let i: Vec<usize> = (0..2).map(|q| d.add_node(NodeKind::In(q))).collect();
        let o: Vec<usize> = (0..2).map(|q| d.add_node(NodeKind::Out(q))).collect();
        let zs: Vec<usize> = (0..2).map(|_| d.add_node(z((0, 1)))).collect();
        let xs: Vec<usize> = (0..2).map(|_| d.add_node(x((0, 1)))).collect();
        for k in 0..2 {
            d.add_edge(i[k], zs[k]);
            d.add_edge(xs[k], o[k]);
            for &xv in &xs {
                d.add_edge(zs[k], xv);
            }
        }
        let site = [zs[0], zs[1], xs[0], xs[1]];
        assert_eq!(find_matches(&d, RuleId::Bialgebra), vec![site.to_vec()]);
        let (post, step) = apply_rule(&d, RuleId::Bialgebra, &site).unwrap();
        assert_eq!(post.stats().spiders, 2);
        assert!((step.scalar_delta.re - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn scalar_component_folded() {
        let mut d = ZxDiagram::identity(1);
        let a = d.add_node(z((1, 2)));
        let b = d.add_node(x((0, 1)));
        d.add_edge(a, b);
        let (post, step) = apply_rule(&d, RuleId::ScalarD, &[a, b]).unwrap();
        assert_eq!(post.node_count(), 2);
        assert!((step.scalar_delta - ev(&d)[(0, 0)]).norm() < 1e-12);
        assert!(matches!(
            apply_rule(&d, RuleId::ScalarD, &[a]),
            Err(RuleError::NoMatch { .. })
        ));
    }

    #[test]
    fn no_match_is_reported() {
        let (d, ids) = chain(&[z((1, 2))]);
        assert!(matches!(apply_rule(&d, RuleId::IdentityRemove, &ids), Err(RuleError::NoMatch { .. })));
        assert!(matches!(apply_rule(&d, RuleId::SpiderFuse, &[ids[0], 99]), Err(RuleError::NoMatch { .. })));
    }

    #[test]
    fn wrong_scalar_would_be_caught() {
        let (d, ids) = chain(&[z((1, 4)), z((1, 2))]);
        let (mut post, _) = apply_rule(&d, RuleId::SpiderFuse, &ids).unwrap();
        post.mul_scalar(C64::new(SQRT_2, 0.0));
        assert!(ev(&post).max_abs_diff(&ev(&d)) > 1e-3);
    }

    #[test]
    fn replay_reproduces_post() {
        let (d, ids) = chain(&[x((1, 1)), z((1, 3)), z((1, 6))]);
        let (post, step) = apply_rule(&d, RuleId::PiCommute, &ids[..2]).unwrap();
        let (again, _) = apply_rule(&d, step.rule, &step.site).unwrap();
        assert!(again.structurally_eq(&post));
        assert_eq!(again.next_id(), post.next_id());
    }
}
