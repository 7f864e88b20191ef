// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex;

use super::{InfoGeoError, StateFamily, FD_STEP_SECOND};
use crate::qcore::ComplexMatrix;
use crate::scalar::Real;

fn inner<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter().zip(b).fold(Complex::new(T::zero(), T::zero()), |s, (x, y)| s + x.conj() * y)
}

/// Quantum geometric tensor in the real parameters `θ`:
/// `Q_ij = ⟨∂_iψ|∂_jψ⟩/⟨ψ|ψ⟩ − ⟨∂_iψ|ψ⟩⟨ψ|∂_jψ⟩/⟨ψ|ψ⟩²`.
pub fn qgt<T: Real>(f: &StateFamily<T>, theta: &[T]) -> Result<ComplexMatrix<T>, InfoGeoError> {
    let psi = f.eval(theta)?;
    let dpsi = f.derivatives(theta)?;
    let d = f.dim_param();
    if dpsi.len() != d || dpsi.iter().any(|v| v.len() != psi.len()) {
        return Err(InfoGeoError::Shape("derivative shape does not match the state".into()));
    }
    let n = inner(&psi, &psi).re;
    let proj: Vec<Complex<T>> = dpsi.iter().map(|v| inner(&psi, v)).collect();
    let mut q = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            q[(i, j)] = inner(&dpsi[i], &dpsi[j]) / n - proj[i].conj() * proj[j] / (n * n);
        }
    }
    Ok(q)
}

/// `g_ij̄ = [(1 + |z|²)δ_ij − z̄_i z_j] / (1 + |z|²)²`.
pub fn fubini_study<T: Real>(z: &[Complex<T>]) -> ComplexMatrix<T> {
    let n = z.len();
    let s = T::one() + z.iter().fold(T::zero(), |a, w| a + w.norm_sqr());
    let mut g = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let delta = if i == j { Complex::new(s, T::zero()) } else { Complex::new(T::zero(), T::zero()) };
            g[(i, j)] = (delta - z[i].conj() * z[j]) / (s * s);
        }
    }
    g
}

/// Complex form of a real-parameter QGT on the chart `(Re z_1, Im z_1, …)`,
/// laid out like [`fubini_study`]:
/// `H_ab = ¼[Q(x_b,x_a) − iQ(x_b,y_a) + iQ(y_b,x_a) + Q(y_b,y_a)]`.
pub fn fs_pullback<T: Real>(q: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>, InfoGeoError> {
    let (r, c) = q.shape();
    if r != c || r % 2 != 0 {
        return Err(InfoGeoError::Shape(format!("expected a 2n×2n tensor, got {r}×{c}")));
    }
    let n = r / 2;
    let i = Complex::new(T::zero(), T::one());
    let mut h = ComplexMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            let (xa, ya, xb, yb) = (2 * a, 2 * a + 1, 2 * b, 2 * b + 1);
            h[(a, b)] = (q[(xb, xa)] - i * q[(xb, ya)] + i * q[(yb, xa)] + q[(yb, ya)]).scale(T::lit(0.25));
        }
    }
    Ok(h)
}

/// `∂²K/∂z_i∂z̄_j` for `K = log(1 + |z|²)` by central differences with step
/// `h` in the real coordinates.
pub fn kahler_hessian<T: Real>(z: &[Complex<T>], h: T) -> ComplexMatrix<T> {
    let n = z.len();
    let coords: Vec<T> = z.iter().flat_map(|w| [w.re, w.im]).collect();
    let k = |x: &[T]| (T::one() + x.iter().fold(T::zero(), |a, v| a + *v * *v)).ln();
    let second = |u: usize, v: usize| {
        let at = |su: T, sv: T| {
            let mut x = coords.clone();
            x[u] = x[u] + su;
            x[v] = x[v] + sv;
            k(&x)
        };
        (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (T::lit(4.0) * h * h)
    };
    let mut g = ComplexMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            let (xa, ya, xb, yb) = (2 * a, 2 * a + 1, 2 * b, 2 * b + 1);
            let re = second(xa, xb) + second(ya, yb);
            let im = second(xa, yb) - second(ya, xb);
            g[(a, b)] = Complex::new(re, im).scale(T::lit(0.25));
        }
    }
    g
}

/// Largest entrywise gap between the Kähler-potential Hessian (step `1e-4`)
/// and the closed-form metric at `z`.
pub fn kahler_check<T: Real>(z: &[Complex<T>]) -> f64 {
    kahler_hessian(z, T::lit(FD_STEP_SECOND)).max_abs_diff(&fubini_study(z)).as_f64()
}
