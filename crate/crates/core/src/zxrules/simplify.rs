// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;

use super::rules::{apply_rule_unchecked, apply_rule_with_tol, find_matches};
use super::{RewriteStep, RuleError, RuleId};
use crate::phase::Phase;
use crate::tol::EQ_TOL;
use crate::zxgraph::{eval_diagram, NodeKind, ZxDiagram, ZxError};
use crate::C64;

#[derive(Clone, Debug)]
pub struct SimplifyConfig {
    /// Defaults to ten times the input node count.
    pub step_limit: Option<usize>,
    /// Check every step with the evaluator, not just the end result.
    pub verify_steps: bool,
    pub tol: f64,
}

impl Default for SimplifyConfig {
    fn default() -> Self {
        SimplifyConfig { step_limit: None, verify_steps: false, tol: EQ_TOL }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Sound { deviation: f64 },
    Unverified,
}

#[derive(Clone, Debug)]
pub struct SimplifyOutcome {
    pub diagram: ZxDiagram,
    pub steps: Vec<RewriteStep>,
    pub verdict: Verdict,
}

/// Legs of `v`, other than the one to `p`, whose neighbour is a degree-2
/// π spider of `p`'s colour.
fn pi_neighbours(d: &ZxDiagram, p: usize, v: usize) -> usize {
    let pk = d.kind(p).unwrap();
    d.neighbors(v)
        .into_iter()
        .filter(|&u| u != p)
        .filter(|&u| d.kind(u).is_some_and(|k| k.same_color(&pk) && k.phase() == Some(Phase::pi())) && d.degree(u) == 2)
        .count()
}

/// Strategy gates: copies only through spiders of degree at most 3, and
/// π-commutation only when it leaves fewer π spiders after fusion.
fn admissible(d: &ZxDiagram, rule: RuleId, site: &[usize]) -> bool {
    match rule {
        RuleId::PiCopy | RuleId::CopyRule => d.degree(site[1]) <= 3,
        RuleId::PiCommute => {
            let deg = d.degree(site[1]) as isize;
            2 * pi_neighbours(d, site[0], site[1]) as isize > deg - 2
        }
        _ => true,
    }
}

const ORDER: [RuleId; 9] = [
    RuleId::ScalarD,
    RuleId::SpiderFuse,
    RuleId::IdentityRemove,
    RuleId::ColorChange,
    RuleId::PiCopy,
    RuleId::CopyRule,
    RuleId::PiCommute,
    RuleId::HopfCancel,
    RuleId::Bialgebra,
];

fn next_step(d: &ZxDiagram) -> Option<(RuleId, Vec<usize>)> {
    for rule in ORDER {
        if let Some(site) = find_matches(d, rule).into_iter().find(|s| admissible(d, rule, s)) {
            return Some((rule, site));
        }
    }
    None
}

/// Rewrite to a fixpoint of the strategy. The first applicable rule in the
/// order ScalarD, SpiderFuse, IdentityRemove, ColorChange, PiCopy,
/// CopyRule, PiCommute, HopfCancel, Bialgebra is applied at its lowest
/// site, then the search restarts.
pub fn simplify(d: &ZxDiagram, config: &SimplifyConfig) -> Result<SimplifyOutcome, RuleError> {
    d.validate()?;
    let limit = config.step_limit.unwrap_or(10 * d.node_count().max(1));
    let mut cur = d.clone();
    let mut steps = Vec::new();
    while let Some((rule, site)) = next_step(&cur) {
        if steps.len() >= limit {
            return Err(RuleError::StepLimitExceeded { limit });
        }
        let (post, step) = if config.verify_steps {
            apply_rule_with_tol(&cur, rule, &site, config.tol)?
        } else {
            apply_rule_unchecked(&cur, rule, &site)?
        };
        cur = post;
        steps.push(step);
    }
    let verdict = match (eval_diagram::<f64>(d), eval_diagram::<f64>(&cur)) {
        (Ok(a), Ok(b)) => {
            let deviation = a.max_abs_diff(&b);
            if deviation.is_nan() || deviation > config.tol {
                // locate the offending step if possible
                if !config.verify_steps {
                    simplify(d, &SimplifyConfig { verify_steps: true, ..config.clone() })?;
                }
                let last = steps.last().map(|s: &RewriteStep| (s.rule, s.site.clone()));
                let (rule, site) = last.unwrap_or((RuleId::ScalarD, vec![]));
                return Err(RuleError::SoundnessViolation { rule, site, deviation });
            }
            Verdict::Sound { deviation }
        }
        (Err(ZxError::TooLarge { .. }), _) | (_, Err(ZxError::TooLarge { .. })) => Verdict::Unverified,
        (Err(e), _) | (_, Err(e)) => return Err(e.into()),
    };
    Ok(SimplifyOutcome { diagram: cur, steps, verdict })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    pub max_deviation: f64,
    /// Unit phase `c` minimising `|A − c·B|` when alignment was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phase: Option<[f64; 2]>,
    pub tol: f64,
}

pub fn verify_equivalence(a: &ZxDiagram, b: &ZxDiagram, up_to_global_phase: bool) -> Result<EquivalenceReport, RuleError> {
    verify_equivalence_tol(a, b, up_to_global_phase, EQ_TOL)
}

pub fn verify_equivalence_tol(
    a: &ZxDiagram,
    b: &ZxDiagram,
    up_to_global_phase: bool,
    tol: f64,
) -> Result<EquivalenceReport, RuleError> {
    let (ta, tb) = ((a.n_inputs(), a.n_outputs()), (b.n_inputs(), b.n_outputs()));
    if ta != tb {
        return Err(RuleError::TypeMismatch { left: ta, right: tb });
    }
    let ma = eval_diagram::<f64>(a)?;
    let mb = eval_diagram::<f64>(b)?;
    let (mb, phase) = if up_to_global_phase {
        let ip = mb.frobenius_inner(&ma);
        let c = if ip.norm() > 0.0 { ip / ip.norm() } else { C64::new(1.0, 0.0) };
        (mb.scale(c), Some([c.re, c.im]))
    } else {
        (mb, None)
    };
    let max_deviation = ma.max_abs_diff(&mb);
    Ok(EquivalenceReport { equivalent: max_deviation <= tol, max_deviation, phase, tol })
}

/// True if the diagram is only bare wires from `in q` to `out q`.
pub fn is_bare_identity(d: &ZxDiagram) -> bool {
    d.nodes().all(|n| n.kind.is_boundary())
        && d.inputs().iter().zip(d.outputs()).all(|(&i, o)| {
            d.neighbors(i) == vec![o]
                && matches!((d.kind(i), d.kind(o)), (Some(NodeKind::In(p)), Some(NodeKind::Out(q))) if p == q)
        })
}
