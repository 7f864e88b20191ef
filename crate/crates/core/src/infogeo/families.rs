// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use rand::Rng;

use super::{InfoGeoError, FD_STEP, SUPPORT_TOL};
use crate::qcore::{ComplexMatrix, DensityOperator};
use crate::scalar::Real;

type VecFn<T> = Arc<dyn Fn(&[T]) -> Vec<T> + Send + Sync>;
type JacFn<T> = Arc<dyn Fn(&[T]) -> Vec<Vec<T>> + Send + Sync>;
type PsiFn<T> = Arc<dyn Fn(&[T]) -> Vec<Complex<T>> + Send + Sync>;
type DPsiFn<T> = Arc<dyn Fn(&[T]) -> Vec<Vec<Complex<T>>> + Send + Sync>;
type RhoFn<T> = Arc<dyn Fn(T) -> ComplexMatrix<T> + Send + Sync>;

fn check_len<T>(theta: &[T], d: usize) -> Result<(), InfoGeoError> {
    if theta.len() != d {
        return Err(InfoGeoError::Shape(format!("expected {d} parameters, got {}", theta.len())));
    }
    Ok(())
}

fn shifted<T: Real>(theta: &[T], i: usize, by: T) -> Vec<T> {
    let mut t = theta.to_vec();
    t[i] = t[i] + by;
    t
}

/// Discrete distributions `p(θ)` over `n` outcomes, `θ ∈ R^d`.
#[derive(Clone)]
pub struct ProbFamily<T: Real> {
    dim_param: usize,
    dim_outcomes: usize,
    p: VecFn<T>,
    /// `jac[k][i] = ∂_i p_k`.
    jacobian: Option<JacFn<T>>,
    step: T,
}

impl<T: Real> fmt::Debug for ProbFamily<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProbFamily")
            .field("dim_param", &self.dim_param)
            .field("dim_outcomes", &self.dim_outcomes)
            .field("analytic_jacobian", &self.jacobian.is_some())
            .finish()
    }
}

impl<T: Real> ProbFamily<T> {
    pub fn new(dim_param: usize, dim_outcomes: usize, p: impl Fn(&[T]) -> Vec<T> + Send + Sync + 'static) -> Self {
        ProbFamily { dim_param, dim_outcomes, p: Arc::new(p), jacobian: None, step: T::lit(FD_STEP) }
    }

    pub fn with_jacobian(mut self, jac: impl Fn(&[T]) -> Vec<Vec<T>> + Send + Sync + 'static) -> Self {
        self.jacobian = Some(Arc::new(jac));
        self
    }

    /// Forget the analytic Jacobian so derivatives come from differences.
    pub fn without_jacobian(mut self) -> Self {
        self.jacobian = None;
        self
    }

    pub fn with_step(mut self, h: T) -> Self {
        self.step = h;
        self
    }

    pub fn dim_param(&self) -> usize {
        self.dim_param
    }

    pub fn dim_outcomes(&self) -> usize {
        self.dim_outcomes
    }

    pub fn step(&self) -> T {
        self.step
    }

    /// Unchecked evaluation, for difference quotients.
    pub(crate) fn raw(&self, theta: &[T]) -> Vec<T> {
        (self.p)(theta)
    }

    /// `p(θ)`, checked: right length, entries `≥ 0`, sum 1 within `1e-10`.
    pub fn eval(&self, theta: &[T]) -> Result<Vec<T>, InfoGeoError> {
        check_len(theta, self.dim_param)?;
        let p = (self.p)(theta);
        if p.len() != self.dim_outcomes {
            return Err(InfoGeoError::Shape(format!("family returned {} outcomes, expected {}", p.len(), self.dim_outcomes)));
        }
        if let Some((k, v)) = p.iter().enumerate().find(|(_, v)| v.is_nan() || v.as_f64() < 0.0) {
            return Err(InfoGeoError::InvalidDistribution(format!("p[{k}] = {v}")));
        }
        let total: f64 = p.iter().map(|v| v.as_f64()).sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(InfoGeoError::InvalidDistribution(format!("sums to {total}")));
        }
        Ok(p)
    }

    /// Like [`eval`](Self::eval), and additionally every `p_k > 1e-12`.
    pub fn eval_supported(&self, theta: &[T]) -> Result<Vec<T>, InfoGeoError> {
        let p = self.eval(theta)?;
        if let Some((index, v)) = p.iter().enumerate().find(|(_, v)| v.as_f64() <= SUPPORT_TOL) {
            return Err(InfoGeoError::DegenerateSupport { index, value: v.as_f64() });
        }
        Ok(p)
    }

    /// `jac[k][i] = ∂_i p_k(θ)`.
    pub fn jacobian(&self, theta: &[T]) -> Result<Vec<Vec<T>>, InfoGeoError> {
        check_len(theta, self.dim_param)?;
        if let Some(j) = &self.jacobian {
            return Ok(j(theta));
        }
        let h = self.step;
        let two_h = h + h;
        let mut jac = vec![vec![T::zero(); self.dim_param]; self.dim_outcomes];
        for i in 0..self.dim_param {
            let plus = self.raw(&shifted(theta, i, h));
            let minus = self.raw(&shifted(theta, i, -h));
            for (row, (a, b)) in jac.iter_mut().zip(plus.iter().zip(&minus)) {
                row[i] = (*a - *b) / two_h;
            }
        }
        Ok(jac)
    }
}

/// Possibly unnormalized state vectors `ψ(θ)`, `θ ∈ R^d`.
#[derive(Clone)]
pub struct StateFamily<T: Real> {
    dim_param: usize,
    psi: PsiFn<T>,
    /// `dpsi[i] = ∂_i ψ`.
    derivative: Option<DPsiFn<T>>,
    step: T,
}

impl<T: Real> fmt::Debug for StateFamily<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StateFamily")
            .field("dim_param", &self.dim_param)
            .field("analytic_derivative", &self.derivative.is_some())
            .finish()
    }
}

impl<T: Real> StateFamily<T> {
    pub fn new(dim_param: usize, psi: impl Fn(&[T]) -> Vec<Complex<T>> + Send + Sync + 'static) -> Self {
        StateFamily { dim_param, psi: Arc::new(psi), derivative: None, step: T::lit(FD_STEP) }
    }

    pub fn with_derivative(mut self, d: impl Fn(&[T]) -> Vec<Vec<Complex<T>>> + Send + Sync + 'static) -> Self {
        self.derivative = Some(Arc::new(d));
        self
    }

    pub fn without_derivative(mut self) -> Self {
        self.derivative = None;
        self
    }

    pub fn with_step(mut self, h: T) -> Self {
        self.step = h;
        self
    }

    pub fn dim_param(&self) -> usize {
        self.dim_param
    }

    /// `ψ(θ)` with `⟨ψ|ψ⟩ > 1e-12` enforced.
    pub fn eval(&self, theta: &[T]) -> Result<Vec<Complex<T>>, InfoGeoError> {
        check_len(theta, self.dim_param)?;
        let psi = (self.psi)(theta);
        let norm_sqr: f64 = psi.iter().map(|z| z.norm_sqr().as_f64()).sum();
        if norm_sqr.is_nan() || norm_sqr <= SUPPORT_TOL {
            return Err(InfoGeoError::ZeroState { norm_sqr });
        }
        Ok(psi)
    }

    pub fn derivatives(&self, theta: &[T]) -> Result<Vec<Vec<Complex<T>>>, InfoGeoError> {
        check_len(theta, self.dim_param)?;
        if let Some(d) = &self.derivative {
            return Ok(d(theta));
        }
        let h = self.step;
        let inv = T::one() / (h + h);
        Ok((0..self.dim_param)
            .map(|i| {
                let plus = (self.psi)(&shifted(theta, i, h));
                let minus = (self.psi)(&shifted(theta, i, -h));
                plus.iter().zip(&minus).map(|(a, b)| (a - b) * inv).collect()
            })
            .collect())
    }

    /// `c(θ)ψ(θ)`; derivatives of the result come from differences.
    pub fn rescaled(&self, c: impl Fn(&[T]) -> Complex<T> + Send + Sync + 'static) -> Self {
        let psi = self.psi.clone();
        StateFamily::new(self.dim_param, move |t| {
            let s = c(t);
            psi(t).into_iter().map(|z| z * s).collect()
        })
        .with_step(self.step)
    }

    /// `Uψ(θ)`, keeping an analytic derivative if there is one.
    pub fn transformed(&self, u: ComplexMatrix<T>) -> Self {
        let psi = self.psi.clone();
        let u = Arc::new(u);
        let u2 = u.clone();
        let mut out = StateFamily::new(self.dim_param, move |t| u.mul_vec(&psi(t))).with_step(self.step);
        if let Some(d) = self.derivative.clone() {
            out = out.with_derivative(move |t| d(t).iter().map(|v| u2.mul_vec(v)).collect());
        }
        out
    }
}

/// Single-parameter density operators `ρ(θ)`.
#[derive(Clone)]
pub struct DensityFamily<T: Real> {
    rho: RhoFn<T>,
    derivative: Option<RhoFn<T>>,
    step: T,
}

impl<T: Real> fmt::Debug for DensityFamily<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DensityFamily").field("analytic_derivative", &self.derivative.is_some()).finish()
    }
}

impl<T: Real> DensityFamily<T> {
    pub fn new(rho: impl Fn(T) -> ComplexMatrix<T> + Send + Sync + 'static) -> Self {
        DensityFamily { rho: Arc::new(rho), derivative: None, step: T::lit(FD_STEP) }
    }

    pub fn with_derivative(mut self, d: impl Fn(T) -> ComplexMatrix<T> + Send + Sync + 'static) -> Self {
        self.derivative = Some(Arc::new(d));
        self
    }

    pub fn without_derivative(mut self) -> Self {
        self.derivative = None;
        self
    }

    pub fn with_step(mut self, h: T) -> Self {
        self.step = h;
        self
    }

    /// `ρ(θ)`, validated as a density operator.
    pub fn eval(&self, theta: T) -> Result<DensityOperator<T>, InfoGeoError> {
        DensityOperator::from_matrix((self.rho)(theta)).map_err(|e| InfoGeoError::InvalidDensity(e.to_string()))
    }

    pub fn derivative(&self, theta: T) -> ComplexMatrix<T> {
        if let Some(d) = &self.derivative {
            return d(theta);
        }
        let h = self.step;
        (&(self.rho)(theta + h) - &(self.rho)(theta - h)).scale_real(T::one() / (h + h))
    }

    /// `|ψ⟩⟨ψ| / ⟨ψ|ψ⟩` for a one-parameter state family.
    pub fn pure(f: StateFamily<T>) -> Result<Self, InfoGeoError> {
        if f.dim_param() != 1 {
            return Err(InfoGeoError::Shape("pure density families need one parameter".into()));
        }
        let g = f.clone();
        let proj = move |psi: &[Complex<T>]| {
            let n: T = psi.iter().map(|z| z.norm_sqr()).fold(T::zero(), |a, b| a + b);
            ComplexMatrix::column(psi).matmul(&ComplexMatrix::row(psi).conj()).scale_real(T::one() / n)
        };
        let mut out = DensityFamily::new(move |t| proj(&(g.psi)(&[t]))).with_step(f.step);
        if let Some(dpsi) = f.derivative.clone() {
            let psi_fn = f.psi.clone();
            out = out.with_derivative(move |t| {
                let psi = psi_fn(&[t]);
                let dp = &dpsi(&[t])[0];
                let n: T = psi.iter().map(|z| z.norm_sqr()).fold(T::zero(), |a, b| a + b);
                let col = ComplexMatrix::column(&psi);
                let dcol = ComplexMatrix::column(dp);
                let outer = |a: &ComplexMatrix<T>, b: &ComplexMatrix<T>| a.matmul(&b.dagger());
                let dn = (col.dagger().matmul(&dcol)[(0, 0)].re) * T::lit(2.0);
                let first = (&outer(&dcol, &col) + &outer(&col, &dcol)).scale_real(T::one() / n);
                &first - &outer(&col, &col).scale_real(dn / (n * n))
            });
        }
        Ok(out)
    }

    /// `½(I + r(θ)·σ)` on one qubit.
    pub fn from_bloch(r: impl Fn(T) -> [T; 3] + Send + Sync + 'static) -> Self {
        DensityFamily::new(move |t| bloch_matrix(r(t), T::lit(0.5)))
    }
}

/// `s·(I + r·σ)` (with `s = ½` a density matrix; the derivative uses `s = ½`
/// and drops the identity).
fn bloch_matrix<T: Real>(r: [T; 3], s: T) -> ComplexMatrix<T> {
    let c = |re: T, im: T| Complex::new(re * s, im * s);
    let one = T::one();
    let zero = T::zero();
    ComplexMatrix::from_vec(2, 2, vec![c(one + r[2], zero), c(r[0], -r[1]), c(r[0], r[1]), c(one - r[2], zero)])
}

/// `p = (θ, 1 − θ)`.
pub fn bernoulli<T: Real>() -> ProbFamily<T> {
    ProbFamily::new(1, 2, |t| vec![t[0], T::one() - t[0]]).with_jacobian(|_| vec![vec![T::one()], vec![-T::one()]])
}

/// `p_k ∝ exp(Σ_i W_ki θ_i)` for an `n × d` weight table.
pub fn softmax<T: Real>(weights: Vec<Vec<T>>) -> ProbFamily<T> {
    let n = weights.len();
    let d = weights.first().map_or(0, |r| r.len());
    let w = Arc::new(weights);
    let w2 = w.clone();
    let probs = move |w: &[Vec<T>], t: &[T]| {
        let logits: Vec<T> = w.iter().map(|row| row.iter().zip(t).fold(T::zero(), |a, (x, y)| a + *x * *y)).collect();
        let mx = logits.iter().copied().fold(T::neg_infinity(), T::max);
        let e: Vec<T> = logits.iter().map(|l| (*l - mx).exp()).collect();
        let z = e.iter().copied().fold(T::zero(), |a, b| a + b);
        e.into_iter().map(|x| x / z).collect::<Vec<T>>()
    };
    ProbFamily::new(d, n, move |t| probs(&w, t)).with_jacobian(move |t| {
        let p = probs(&w2, t);
        let mean: Vec<T> = (0..d).map(|i| (0..n).fold(T::zero(), |a, k| a + p[k] * w2[k][i])).collect();
        (0..n).map(|k| (0..d).map(|i| p[k] * (w2[k][i] - mean[i])).collect()).collect()
    })
}

/// Softmax family with weights uniform in `[-1, 1]`.
pub fn random_softmax<R: Rng>(rng: &mut R, d: usize, n: usize) -> ProbFamily<f64> {
    let w = (0..n).map(|_| (0..d).map(|_| rng.random_range(-1.0..=1.0)).collect()).collect();
    softmax(w)
}

pub fn constant_distribution<T: Real>(p: Vec<T>, dim_param: usize) -> ProbFamily<T> {
    let n = p.len();
    ProbFamily::new(dim_param, n, move |_| p.clone()).with_jacobian(move |_| vec![vec![T::zero(); dim_param]; n])
}

/// `ρ(θ) = diag(θ, 1 − θ)`.
pub fn diag_qubit<T: Real>() -> DensityFamily<T> {
    let z = T::zero();
    let c = move |x: T| Complex::new(x, z);
    DensityFamily::new(move |t| ComplexMatrix::diagonal(&[c(t), c(T::one() - t)]))
        .with_derivative(move |_| ComplexMatrix::diagonal(&[c(T::one()), c(-T::one())]))
}

pub fn constant_density<T: Real>(rho: ComplexMatrix<T>) -> DensityFamily<T> {
    let (r, c) = rho.shape();
    DensityFamily::new(move |_| rho.clone()).with_derivative(move |_| ComplexMatrix::zeros(r, c))
}

/// `ψ(θ) = cos(θ/2)|0⟩ + sin(θ/2)|1⟩`.
pub fn bloch_theta<T: Real>() -> StateFamily<T> {
    let half = T::lit(0.5);
    let re = |x: T| Complex::new(x, T::zero());
    StateFamily::new(1, move |t: &[T]| vec![re((t[0] * half).cos()), re((t[0] * half).sin())])
        .with_derivative(move |t: &[T]| vec![vec![re(-half * (t[0] * half).sin()), re(half * (t[0] * half).cos())]])
}

/// Affine chart `ψ = (1, z_1, …, z_n)` with real parameters
/// `(Re z_1, Im z_1, …, Re z_n, Im z_n)`.
pub fn chart<T: Real>(n: usize) -> StateFamily<T> {
    StateFamily::new(2 * n, move |t| {
        let mut v = vec![Complex::new(T::one(), T::zero())];
        v.extend((0..n).map(|a| Complex::new(t[2 * a], t[2 * a + 1])));
        v
    })
    .with_derivative(move |_| {
        (0..2 * n)
            .map(|i| {
                let mut v = vec![Complex::new(T::zero(), T::zero()); n + 1];
                v[i / 2 + 1] = if i % 2 == 0 { Complex::new(T::one(), T::zero()) } else { Complex::new(T::zero(), T::one()) };
                v
            })
            .collect()
    })
}

pub fn constant_state<T: Real>(psi: Vec<Complex<T>>, dim_param: usize) -> StateFamily<T> {
    let len = psi.len();
    StateFamily::new(dim_param, move |_| psi.clone())
        .with_derivative(move |_| vec![vec![Complex::new(T::zero(), T::zero()); len]; dim_param])
}

fn unit3<R: Rng>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 0.1 && n <= 1.0 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

/// Full-rank qubit family: the Bloch vector rotates about a random axis
/// while its length oscillates inside `[0.07, 0.91]`. Derivatives come
/// from differences.
pub fn random_qubit_family<R: Rng>(rng: &mut R) -> DensityFamily<f64> {
    let u = unit3(rng);
    let w = unit3(rng);
    let len = rng.random_range(0.1..0.7);
    let omega: f64 = rng.random_range(-2.0..2.0);
    DensityFamily::from_bloch(move |t: f64| {
        let (s, c) = (omega * t).sin_cos();
        let cross = [w[1] * u[2] - w[2] * u[1], w[2] * u[0] - w[0] * u[2], w[0] * u[1] - w[1] * u[0]];
        let dot = w[0] * u[0] + w[1] * u[1] + w[2] * u[2];
        let r = len * (1.0 + 0.3 * t.sin());
        std::array::from_fn(|i| r * (u[i] * c + cross[i] * s + w[i] * dot * (1.0 - c)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bernoulli_validates() {
        let f = bernoulli::<f64>();
        assert_eq!(f.eval(&[0.25]).unwrap(), vec![0.25, 0.75]);
        assert!(matches!(f.eval(&[1.5]), Err(InfoGeoError::InvalidDistribution(_))));
        assert!(matches!(f.eval_supported(&[0.0]), Err(InfoGeoError::DegenerateSupport { index: 0, .. })));
        assert!(matches!(f.eval(&[0.1, 0.2]), Err(InfoGeoError::Shape(_))));
    }

    #[test]
    fn softmax_jacobian_matches_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = random_softmax(&mut rng, 3, 4);
        let theta = [0.2, -0.4, 0.7];
        let a = f.jacobian(&theta).unwrap();
        let b = f.clone().without_jacobian().jacobian(&theta).unwrap();
        for (ra, rb) in a.iter().zip(&b) {
            for (x, y) in ra.iter().zip(rb) {
                assert!((x - y).abs() < 1e-9);
            }
        }
        let p = f.eval(&theta).unwrap();
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pure_family_derivative_matches_differences() {
        let f = DensityFamily::pure(bloch_theta::<f64>().rescaled(|t| Complex::new(1.0 + t[0] * t[0], 0.5))).unwrap();
        let g = DensityFamily::pure(bloch_theta::<f64>()).unwrap();
        for t in [0.1, 0.8, 2.0] {
            assert!(f.eval(t).unwrap().matrix().approx_eq(g.eval(t).unwrap().matrix(), 1e-12));
            assert!(f.derivative(t).approx_eq(&g.derivative(t), 1e-9));
        }
    }

    #[test]
    fn random_qubit_family_is_full_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let f = random_qubit_family(&mut rng);
            let t = rng.random_range(-1.0..1.0);
            let rho = f.eval(t).unwrap();
            assert!(rho.eigen().values[0] > 0.04);
        }
    }

    #[test]
    fn zero_state_is_rejected() {
        let f = constant_state(vec![Complex::new(0.0f64, 0.0); 2], 1);
        assert!(matches!(f.eval(&[0.0]), Err(InfoGeoError::ZeroState { .. })));
    }
}
