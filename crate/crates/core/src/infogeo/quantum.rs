// SPDX-License-Identifier: Apache-2.0

use std::str::FromStr;

use serde::Serialize;

use super::{DensityFamily, InfoGeoError, SUPPORT_TOL};
use crate::qcore::ComplexMatrix;
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct SldResult<T: Real> {
    /// The symmetric logarithmic derivative in the original basis.
    pub l: ComplexMatrix<T>,
    /// `max |∂ρ − (Lρ + ρL)/2|` over the support block (eigenbasis entries
    /// with `p_i + p_j` above the kernel threshold).
    pub residual: f64,
}

/// Eigenbasis data shared by the SLD and the QFI formulas.
struct Spectral<T: Real> {
    p: Vec<T>,
    v: ComplexMatrix<T>,
    /// `∂ρ` in the eigenbasis.
    d: ComplexMatrix<T>,
    /// `L` in the eigenbasis.
    l: ComplexMatrix<T>,
    rho: ComplexMatrix<T>,
    drho: ComplexMatrix<T>,
}

fn in_kernel<T: Real>(a: T, b: T) -> bool {
    (a + b).as_f64() <= SUPPORT_TOL
}

fn spectral<T: Real>(f: &DensityFamily<T>, theta: T) -> Result<Spectral<T>, InfoGeoError> {
    let rho = f.eval(theta)?;
    let eig = rho.eigen();
    let drho = f.derivative(theta);
    if drho.shape() != rho.matrix().shape() {
        return Err(InfoGeoError::Shape(format!("derivative is {:?}, state is {:?}", drho.shape(), rho.matrix().shape())));
    }
    let v = eig.vectors;
    let p = eig.values;
    let d = v.dagger().matmul(&drho).matmul(&v);
    let n = p.len();
    let mut l = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if !in_kernel(p[i], p[j]) {
                l[(i, j)] = d[(i, j)] * (T::lit(2.0) / (p[i] + p[j]));
            }
        }
    }
    Ok(Spectral { p, v, d, l, rho: rho.into_matrix(), drho })
}

/// Symmetric logarithmic derivative: `L_ij = 2(∂ρ)_ij / (p_i + p_j)` in the
/// eigenbasis of `ρ(θ)`, and zero where `p_i + p_j ≤ 1e-12`.
pub fn sld<T: Real>(f: &DensityFamily<T>, theta: T) -> Result<SldResult<T>, InfoGeoError> {
    let s = spectral(f, theta)?;
    let l = s.v.matmul(&s.l).matmul(&s.v.dagger());
    let sym = (&l.matmul(&s.rho) + &s.rho.matmul(&l)).scale_real(T::lit(0.5));
    let r = s.v.dagger().matmul(&(&s.drho - &sym)).matmul(&s.v);
    let n = s.p.len();
    let mut residual = 0f64;
    for i in 0..n {
        for j in 0..n {
            if !in_kernel(s.p[i], s.p[j]) {
                residual = residual.max(r[(i, j)].norm().as_f64());
            }
        }
    }
    Ok(SldResult { l, residual })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QfiMethod {
    /// `tr[ρL²]`, the reference value.
    Trace,
    /// `Σ_{k ≤ s} Σ_l p_k L_kl L_lk` in the eigenbasis.
    EigenSum,
    /// Eigenvalue-derivative term plus the eigenvector term with weights
    /// `4p_i(p_i − p_j)²/(p_i + p_j)²`.
    Spectral,
}

impl FromStr for QfiMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "trace" => Ok(QfiMethod::Trace),
            "eigen_sum" | "eigen-sum" => Ok(QfiMethod::EigenSum),
            "spectral" => Ok(QfiMethod::Spectral),
            _ => Err(format!("unknown QFI method {s:?} (trace, eigen_sum, spectral)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QfiReport {
    pub trace: f64,
    pub eigen_sum: f64,
    pub spectral: f64,
    /// Eigenvalue part of the spectral formula; the classical Fisher
    /// information of the spectrum.
    pub classical_term: f64,
    /// Eigenvector part of the spectral formula.
    pub quantum_term: f64,
    pub eigen_sum_deviation: f64,
    pub spectral_deviation: f64,
    pub sld_residual: f64,
    pub rank: usize,
}

fn values<T: Real>(s: &Spectral<T>) -> (T, T, T, T) {
    let n = s.p.len();
    let l_orig = s.v.matmul(&s.l).matmul(&s.v.dagger());
    let trace = s.rho.matmul(&l_orig).matmul(&l_orig).trace().re;

    let mut eigen_sum = T::zero();
    for k in (0..n).filter(|&k| s.p[k].as_f64() > SUPPORT_TOL) {
        for l in 0..n {
            eigen_sum = eigen_sum + (s.l[(k, l)] * s.l[(l, k)]).re * s.p[k];
        }
    }

    // ∂p_i = ⟨ψ_i|∂ρ|ψ_i⟩ and ⟨ψ_i|∂ψ_j⟩ = (∂ρ)_ij / (p_j − p_i), the
    // first-order perturbation formulas; degenerate pairs carry weight 0.
    let mut classical = T::zero();
    let mut quantum = T::zero();
    let four = T::lit(4.0);
    for i in (0..n).filter(|&i| s.p[i].as_f64() > SUPPORT_TOL) {
        let dp = s.d[(i, i)].re;
        classical = classical + dp * dp / s.p[i];
        for j in 0..n {
            let gap = s.p[j] - s.p[i];
            if j == i || gap.abs().as_f64() <= SUPPORT_TOL {
                continue;
            }
            let overlap = s.d[(i, j)].norm_sqr() / (gap * gap);
            let sum = s.p[i] + s.p[j];
            quantum = quantum + four * s.p[i] * gap * gap / (sum * sum) * overlap;
        }
    }
    (trace, eigen_sum, classical, quantum)
}

pub fn qfi<T: Real>(f: &DensityFamily<T>, theta: T, method: QfiMethod) -> Result<T, InfoGeoError> {
    let s = spectral(f, theta)?;
    let (trace, eigen_sum, classical, quantum) = values(&s);
    Ok(match method {
        QfiMethod::Trace => trace,
        QfiMethod::EigenSum => eigen_sum,
        QfiMethod::Spectral => classical + quantum,
    })
}

/// All three formulas, their deviations from `tr[ρL²]`, and the SLD residual.
pub fn qfi_report<T: Real>(f: &DensityFamily<T>, theta: T) -> Result<QfiReport, InfoGeoError> {
    let s = spectral(f, theta)?;
    let (trace, eigen_sum, classical, quantum) = values(&s);
    let rank = s.p.iter().filter(|p| p.as_f64() > SUPPORT_TOL).count();
    let (trace, eigen_sum, classical_term, quantum_term) = (trace.as_f64(), eigen_sum.as_f64(), classical.as_f64(), quantum.as_f64());
    let spectral = classical_term + quantum_term;
    Ok(QfiReport {
        trace,
        eigen_sum,
        spectral,
        classical_term,
        quantum_term,
        eigen_sum_deviation: (eigen_sum - trace).abs(),
        spectral_deviation: (spectral - trace).abs(),
        sld_residual: sld(f, theta)?.residual,
        rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::infogeo::{bloch_theta, constant_density, diag_qubit, random_qubit_family};
    use crate::Matrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn diagonal_sld_and_qfi() {
        let f = diag_qubit::<f64>();
        for t in [0.2, 0.5, 0.85] {
            let r = sld(&f, t).unwrap();
            let want = Matrix::from_real_rows(&[&[1.0 / t, 0.0], &[0.0, -1.0 / (1.0 - t)]]);
            assert!(r.l.approx_eq(&want, 1e-12));
            let q = qfi_report(&f, t).unwrap();
            assert!((q.trace - 1.0 / (t * (1.0 - t))).abs() < 1e-10);
            assert!(q.quantum_term.abs() < 1e-14);
        }
        assert!((qfi(&f, 0.5, QfiMethod::Trace).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn constant_family_has_zero_sld() {
        let f = constant_density(Matrix::from_real_rows(&[&[0.7, 0.1], &[0.1, 0.3]]));
        let r = sld(&f, 0.3).unwrap();
        assert!(r.l.max_abs() < 1e-15);
        assert!(qfi(&f, 0.3, QfiMethod::Trace).unwrap().abs() < 1e-15);
    }

    #[test]
    fn pure_state_sld_is_twice_the_derivative() {
        let f = DensityFamily::pure(bloch_theta::<f64>()).unwrap();
        for t in [0.3, 1.1, 2.5] {
            let r = sld(&f, t).unwrap();
            assert!(r.l.approx_eq(&f.derivative(t).scale_real(2.0), 1e-10));
            assert!(r.residual < 1e-10);
            let q = qfi_report(&f, t).unwrap();
            assert!((q.trace - 1.0).abs() < 1e-10, "{q:?}");
            assert!(q.spectral_deviation < 1e-10);
            assert_eq!(q.rank, 1);
        }
    }

    #[test]
    fn formulas_agree_on_random_full_rank_families() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let f = random_qubit_family(&mut rng);
            let t = rng.random_range(-1.0..1.0);
            let q = qfi_report(&f, t).unwrap();
            assert!(q.eigen_sum_deviation < 1e-9, "{q:?}");
            assert!(q.sld_residual < 1e-8);
            assert!(q.trace >= 0.0);
        }
    }

    #[test]
    fn sld_is_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = random_qubit_family(&mut rng);
        assert!(sld(&f, 0.2).unwrap().l.is_hermitian(1e-10));
    }

    #[test]
    fn method_names() {
        assert_eq!("eigen_sum".parse::<QfiMethod>(), Ok(QfiMethod::EigenSum));
        assert!("bogus".parse::<QfiMethod>().is_err());
    }
}
