// SPDX-License-Identifier: Apache-2.0

//! Cyclic Jacobi eigensolver for complex Hermitian matrices.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::ComplexMatrix;
use crate::scalar::Real;

/// Eigen-pairs of a Hermitian matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct HermitianEigen<T: Real> {
    pub values: Vec<T>,
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: ComplexMatrix<T>,
}

impl<T: Real> HermitianEigen<T> {
    pub fn vector(&self, k: usize) -> Vec<Complex<T>> {
        self.vectors.col_vec(k)
    }

    /// Replace eigenvalues in `[-clamp, 0)` with zero.
    pub fn clamp_small_negatives(mut self, clamp: f64) -> Self {
        let c = T::lit(clamp);
        for v in &mut self.values {
            if *v < T::zero() && *v >= -c {
                *v = T::zero();
            }
        }
        self
    }

    /// `V diag(values) V†`.
    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        let d: Vec<Complex<T>> = self.values.iter().map(|&v| Complex::new(v, T::zero())).collect();
        self.vectors.matmul(&ComplexMatrix::diagonal(&d)).matmul(&self.vectors.dagger())
    }
}

/// Diagonalize a Hermitian matrix. Only the upper triangle's Hermitian part
/// is trusted; the input is symmetrized first.
pub fn hermitian_eigen<T: Real>(m: &ComplexMatrix<T>) -> HermitianEigen<T> {
    assert!(m.is_square(), "eigendecomposition needs a square matrix");
    let n = m.rows();
    let half = T::lit(0.5);
    let mut a = (&m.clone() + &m.dagger()).scale_real(half);
    let mut v = ComplexMatrix::<T>::identity(n);

    let scale = a.max_abs().max(T::min_positive_value());
    let eps = T::epsilon() * scale;

    for _sweep in 0..100 {
        let mut off = T::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off = off + a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= eps {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let b = apq.norm();
                if b <= eps * T::lit(1e-3) {
                    continue;
                }
                let phase = apq / b; // e^{iφ}
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (T::lit(2.0) * b);
                let t = {
                    let sgn = if theta >= T::zero() { T::one() } else { -T::one() };
                    sgn / (theta.abs() + (theta * theta + T::one()).sqrt())
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                // U restricted to (p, q): [[c, s], [-s e^{-iφ}, c e^{-iφ}]]
                let ph = phase.conj();
                let upp = Complex::new(c, T::zero());
                let upq = Complex::new(s, T::zero());
                let uqp = ph * (-s);
                let uqq = ph * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * upp + akq * uqp;
                    a[(k, q)] = akp * upq + akq * uqq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = upp.conj() * apk + uqp.conj() * aqk;
                    a[(q, k)] = upq.conj() * apk + uqq.conj() * aqk;
                }
                a[(p, q)] = Complex::zero();
                a[(q, p)] = Complex::zero();
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * upp + vkq * uqp;
                    v[(k, q)] = vkp * upq + vkq * uqq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        // fix the gauge: largest-modulus component real and positive
        let mut best = 0;
        for k in 0..n {
            if v[(k, src)].norm() > v[(best, src)].norm() + T::lit(1e-12) {
                best = k;
            }
        }
        let pivot = v[(best, src)];
        let g = if pivot.norm() > T::zero() { pivot.conj() / pivot.norm() } else { Complex::one() };
        for k in 0..n {
            vectors[(k, dst)] = v[(k, src)] * g;
        }
    }
    HermitianEigen { values, vectors }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = ComplexMatrix<f64>;

    #[test]
    fn diagonal_input_is_sorted() {
        let m = M::from_real_rows(&[&[3.0, 0.0], &[0.0, -1.0]]);
        let e = hermitian_eigen(&m);
        assert_eq!(e.values, vec![-1.0, 3.0]);
    }

    #[test]
    fn pauli_y_spectrum() {
        let y = M::from_rows(&[
            vec![Complex::new(0.0, 0.0), Complex::new(0.0, -1.0)],
            vec![Complex::new(0.0, 1.0), Complex::new(0.0, 0.0)],
        ]);
        let e = hermitian_eigen(&y);
        assert!((e.values[0] + 1.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
        assert!(e.reconstruct().approx_eq(&y, 1e-14));
        assert!(e.vectors.is_unitary(1e-14));
    }

    #[test]
    fn random_hermitian_reconstructs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..7 {
            let mut m = M::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] = Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                }
            }
            let h = (&m + &m.dagger()).scale_real(0.5);
            let e = hermitian_eigen(&h);
            assert!(e.reconstruct().approx_eq(&h, 1e-12), "n = {n}");
            assert!(e.vectors.is_unitary(1e-12));
            assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn clamp_only_touches_tiny_negatives() {
        let e = HermitianEigen { values: vec![-1e-11, -1e-3, 0.5], vectors: M::identity(3) }
            .clamp_small_negatives(1e-10);
        assert_eq!(e.values, vec![0.0, -1e-3, 0.5]);
    }
}
