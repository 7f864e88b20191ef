// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;

use super::{InfoGeoError, ProbFamily};
use crate::scalar::Real;

/// `F_ij = Σ_k ∂_i p_k ∂_j p_k / p_k`, requiring full support.
pub fn fisher_matrix<T: Real>(f: &ProbFamily<T>, theta: &[T]) -> Result<Vec<Vec<T>>, InfoGeoError> {
    let p = f.eval_supported(theta)?;
    let jac = f.jacobian(theta)?;
    let d = f.dim_param();
    let mut out = vec![vec![T::zero(); d]; d];
    for (row, pk) in jac.iter().zip(&p) {
        for (i, out_row) in out.iter_mut().enumerate() {
            for (j, x) in out_row.iter_mut().enumerate() {
                *x = *x + row[i] * row[j] / *pk;
            }
        }
    }
    Ok(out)
}

/// Covariance of `∇I`, `I = −log p`, under `p(θ)`, by enumerating outcomes.
/// The gradient is a central difference of `log p` itself, so this does not
/// share code with [`fisher_matrix`].
pub fn score_covariance<T: Real>(f: &ProbFamily<T>, theta: &[T]) -> Result<Vec<Vec<T>>, InfoGeoError> {
    let p = f.eval_supported(theta)?;
    let (d, n) = (f.dim_param(), f.dim_outcomes());
    let h = f.step();
    let mut grad = vec![vec![T::zero(); d]; n];
    for i in 0..d {
        let mut tp = theta.to_vec();
        let mut tm = theta.to_vec();
        tp[i] = tp[i] + h;
        tm[i] = tm[i] - h;
        let (pp, pm) = (f.raw(&tp), f.raw(&tm));
        for k in 0..n {
            grad[k][i] = -(pp[k].ln() - pm[k].ln()) / (h + h);
        }
    }
    let mean: Vec<T> = (0..d).map(|i| (0..n).fold(T::zero(), |a, k| a + p[k] * grad[k][i])).collect();
    Ok((0..d)
        .map(|i| (0..d).map(|j| (0..n).fold(T::zero(), |a, k| a + p[k] * grad[k][i] * grad[k][j]) - mean[i] * mean[j]).collect())
        .collect())
}

/// `−Σ p log p` in nats, with `0 log 0 = 0`.
pub fn shannon_entropy<T: Real>(p: &[T]) -> T {
    p.iter().filter(|x| **x > T::zero()).fold(T::zero(), |a, x| a - *x * x.ln())
}

/// `KL(p ‖ q) = Σ p log(p/q)`.
pub fn kl_divergence<T: Real>(p: &[T], q: &[T]) -> T {
    p.iter()
        .zip(q)
        .filter(|(a, _)| **a > T::zero())
        .fold(T::zero(), |acc, (a, b)| acc + *a * ((*a - *b) / *b).ln_1p())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KlRow {
    pub delta: f64,
    pub kl: f64,
    pub quadratic: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KlReport {
    pub rows: Vec<KlRow>,
    /// Least-squares slope of `log residual` against `log δ`.
    pub slope: Option<f64>,
    /// Slope at least 2.7 over at least a decade of step sizes.
    pub pass: bool,
}

/// Compare `KL(p(θ+δu) ‖ p(θ))` with `½δ² uᵀFu` along direction `u`.
pub fn kl_quadratic_check<T: Real>(
    f: &ProbFamily<T>,
    theta: &[T],
    direction: &[T],
    deltas: &[T],
) -> Result<KlReport, InfoGeoError> {
    if direction.len() != f.dim_param() {
        return Err(InfoGeoError::Shape(format!("direction has {} entries, expected {}", direction.len(), f.dim_param())));
    }
    let fisher = fisher_matrix(f, theta)?;
    let p0 = f.eval_supported(theta)?;
    let ufu = direction.iter().enumerate().fold(T::zero(), |a, (i, ui)| {
        a + direction.iter().enumerate().fold(T::zero(), |b, (j, uj)| b + *ui * fisher[i][j] * *uj)
    });
    let mut rows = Vec::with_capacity(deltas.len());
    for &delta in deltas {
        let moved: Vec<T> = theta.iter().zip(direction).map(|(t, u)| *t + delta * *u).collect();
        let p = f.eval_supported(&moved)?;
        let kl = kl_divergence(&p, &p0).as_f64();
        let quadratic = (T::lit(0.5) * delta * delta * ufu).as_f64();
        rows.push(KlRow { delta: delta.as_f64(), kl, quadratic, residual: (kl - quadratic).abs() });
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.delta > 0.0 && r.residual > 0.0)
        .map(|r| (r.delta.ln(), r.residual.ln()))
        .collect();
    let slope = (pts.len() >= 2).then(|| {
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        sxy / sxx
    });
    let span = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max) - pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let pass = slope.is_some_and(|s| s >= 2.7) && span >= 10f64.ln() - 1e-12;
    Ok(KlReport { rows, slope, pass })
}
