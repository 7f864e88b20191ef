// SPDX-License-Identifier: Apache-2.0

//! (Co)algebra structure tensors on `C^d` and numerical checks of the
//! unnormalized Hopf, Frobenius (F-algebra) and F-Hopf axioms.
//!
//! Conventions: `m` is `d × d²`, `Δ` is `d² × d`, `η` a `d × 1` column,
//! `ε` a `1 × d` row; on `C^d ⊗ C^d` the left factor is the slow index.
//! A structure is just data; nothing is assumed until checked.

mod examples;

use serde::Serialize;
use thiserror::Error;

pub use examples::{build_group_algebra, zx_structures};

use crate::qcore::ComplexMatrix;
use crate::scalar::Real;
use crate::tol::AXIOM_TOL;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HopfError {
    #[error("shape error: {0}")]
    Shape(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct HopfStructure<T: Real> {
    pub dim: usize,
    pub m: ComplexMatrix<T>,
    pub eta: ComplexMatrix<T>,
    pub delta: ComplexMatrix<T>,
    pub eps: ComplexMatrix<T>,
    pub antipode: ComplexMatrix<T>,
    pub lozenge: T,
}

impl<T: Real> HopfStructure<T> {
    pub fn new(
        m: ComplexMatrix<T>,
        eta: ComplexMatrix<T>,
        delta: ComplexMatrix<T>,
        eps: ComplexMatrix<T>,
        antipode: ComplexMatrix<T>,
        lozenge: T,
    ) -> Result<Self, HopfError> {
        let h = HopfStructure { dim: eta.rows(), m, eta, delta, eps, antipode, lozenge };
        h.check_shapes()?;
        Ok(h)
    }

    pub fn check_shapes(&self) -> Result<(), HopfError> {
        let d = self.dim;
        let want = [
            ("m", self.m.shape(), (d, d * d)),
            ("eta", self.eta.shape(), (d, 1)),
            ("delta", self.delta.shape(), (d * d, d)),
            ("eps", self.eps.shape(), (1, d)),
            ("antipode", self.antipode.shape(), (d, d)),
        ];
        for (name, got, exp) in want {
            if got != exp {
                return Err(HopfError::Shape(format!("{name} is {got:?}, expected {exp:?} for dim {d}")));
            }
        }
        if d == 0 {
            return Err(HopfError::Shape("dimension must be positive".into()));
        }
        if self.lozenge == T::zero() {
            return Err(HopfError::Shape("normalization constant must be nonzero".into()));
        }
        Ok(())
    }

    /// Multiplication, unit, antipode and constant from `mult`; comultiplication
    /// and counit from `comult`.
    pub fn assemble(mult: &Self, comult: &Self) -> Result<Self, HopfError> {
        if mult.dim != comult.dim {
            return Err(HopfError::Shape(format!("dimensions differ: {} vs {}", mult.dim, comult.dim)));
        }
        HopfStructure::new(
            mult.m.clone(),
            mult.eta.clone(),
            comult.delta.clone(),
            comult.eps.clone(),
            mult.antipode.clone(),
            mult.lozenge,
        )
    }

    pub fn with_lozenge(&self, lozenge: T) -> Self {
        HopfStructure { lozenge, ..self.clone() }
    }

    pub fn with_antipode(&self, antipode: ComplexMatrix<T>) -> Self {
        HopfStructure { antipode, ..self.clone() }
    }

    /// `Δ' = ◊Δ`, `ε' = ◊⁻¹ε`, `S' = ◊^k S`, constant 1. With `k = 0` an
    /// unnormalized Hopf algebra becomes a normalized one.
    pub fn rescaled(&self, antipode_power: i32) -> Self {
        let l = self.lozenge;
        HopfStructure {
            dim: self.dim,
            m: self.m.clone(),
            eta: self.eta.clone(),
            delta: self.delta.scale_real(l),
            eps: self.eps.scale_real(T::one() / l),
            antipode: self.antipode.scale_real(l.powi(antipode_power)),
            lozenge: T::one(),
        }
    }
}

/// Normalized structure from an unnormalized one (`S' = S`).
pub fn rescale_normalized<T: Real>(h: &HopfStructure<T>) -> HopfStructure<T> {
    h.rescaled(0)
}

/// The flip `a ⊗ b ↦ b ⊗ a` on `C^d ⊗ C^d`.
pub fn swap<T: Real>(d: usize) -> ComplexMatrix<T> {
    let mut s = ComplexMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            s[(b * d + a, a * d + b)] = num_complex::Complex::new(T::one(), T::zero());
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub deviation: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomReport {
    pub tol: f64,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    fn new() -> Self {
        AxiomReport { tol: AXIOM_TOL, checks: Vec::new() }
    }

    fn push(&mut self, axiom: &str, deviation: f64) {
        let pass = deviation <= self.tol;
        self.checks.push(AxiomCheck { axiom: axiom.to_string(), deviation, pass });
    }

    fn extend(&mut self, prefix: &str, other: AxiomReport) {
        for c in other.checks {
            self.checks.push(AxiomCheck { axiom: format!("{prefix}.{}", c.axiom), ..c });
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn max_deviation(&self) -> f64 {
        self.checks.iter().fold(0.0, |m, c| m.max(c.deviation))
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn failures(&self) -> Vec<&AxiomCheck> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

fn dev<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> f64 {
    a.max_abs_diff(b).as_f64()
}

fn id<T: Real>(d: usize) -> ComplexMatrix<T> {
    ComplexMatrix::identity(d)
}

/// Rows of a `d⁴ × k` matrix permuted by `a⊗b⊗c⊗e ↦ a⊗c⊗b⊗e`, i.e.
/// `(id ⊗ swap ⊗ id) · x` without building the `d⁴ × d⁴` matrix.
fn middle_swap<T: Real>(x: &ComplexMatrix<T>, d: usize) -> ComplexMatrix<T> {
    let mut out = ComplexMatrix::zeros(x.rows(), x.cols());
    let d2 = d * d;
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                for e in 0..d {
                    let src = a * d2 * d + b * d2 + c * d + e;
                    let dst = a * d2 * d + c * d2 + b * d + e;
                    for k in 0..x.cols() {
                        out[(dst, k)] = x[(src, k)];
                    }
                }
            }
        }
    }
    out
}

fn shapes_m_eta<T: Real>(m: &ComplexMatrix<T>, eta: &ComplexMatrix<T>) -> Result<usize, HopfError> {
    let d = eta.rows();
    if d == 0 || eta.cols() != 1 || m.shape() != (d, d * d) {
        return Err(HopfError::Shape(format!("m {:?} and eta {:?} are not a d×d², d×1 pair", m.shape(), eta.shape())));
    }
    Ok(d)
}

fn shapes_delta_eps<T: Real>(delta: &ComplexMatrix<T>, eps: &ComplexMatrix<T>) -> Result<usize, HopfError> {
    let d = eps.cols();
    if d == 0 || eps.rows() != 1 || delta.shape() != (d * d, d) {
        return Err(HopfError::Shape(format!(
            "delta {:?} and eps {:?} are not a d²×d, 1×d pair",
            delta.shape(),
            eps.shape()
        )));
    }
    Ok(d)
}

fn algebra_report<T: Real>(m: &ComplexMatrix<T>, eta: &ComplexMatrix<T>) -> Result<AxiomReport, HopfError> {
    let d = shapes_m_eta(m, eta)?;
    let mut r = AxiomReport::new();
    r.push("associativity", dev(&m.matmul(&m.kron(&id(d))), &m.matmul(&id(d).kron(m))));
    r.push("left_unit", dev(&m.matmul(&eta.kron(&id(d))), &id(d)));
    r.push("right_unit", dev(&m.matmul(&id(d).kron(eta)), &id(d)));
    Ok(r)
}

fn coalgebra_report<T: Real>(delta: &ComplexMatrix<T>, eps: &ComplexMatrix<T>) -> Result<AxiomReport, HopfError> {
    let d = shapes_delta_eps(delta, eps)?;
    let mut r = AxiomReport::new();
    r.push("coassociativity", dev(&delta.kron(&id(d)).matmul(delta), &id(d).kron(delta).matmul(delta)));
    r.push("left_counit", dev(&eps.kron(&id(d)).matmul(delta), &id(d)));
    r.push("right_counit", dev(&id(d).kron(eps).matmul(delta), &id(d)));
    Ok(r)
}

/// Associativity and both unit laws.
pub fn check_algebra<T: Real>(h: &HopfStructure<T>) -> Result<AxiomReport, HopfError> {
    h.check_shapes()?;
    algebra_report(&h.m, &h.eta)
}

/// Coassociativity and both counit laws.
pub fn check_coalgebra<T: Real>(h: &HopfStructure<T>) -> Result<AxiomReport, HopfError> {
    h.check_shapes()?;
    coalgebra_report(&h.delta, &h.eps)
}

/// The four ◊-decorated compatibilities: `◊Δη = η⊗η`,
/// `◊(m⊗m)(id⊗swap⊗id)(Δ⊗Δ) = Δm`, `εη = ◊`, `◊εm = ε⊗ε`.
pub fn check_unnormalized_bialgebra<T: Real>(h: &HopfStructure<T>) -> Result<AxiomReport, HopfError> {
    h.check_shapes()?;
    let d = h.dim;
    let l = h.lozenge;
    let mut r = AxiomReport::new();
    r.push("unit_comultiplication", dev(&h.delta.matmul(&h.eta).scale_real(l), &h.eta.kron(&h.eta)));
    let lhs = h.m.kron(&h.m).matmul(&middle_swap(&h.delta.kron(&h.delta), d)).scale_real(l);
    r.push("multiplication_comultiplication", dev(&lhs, &h.delta.matmul(&h.m)));
    let lozenge = ComplexMatrix::from_vec(1, 1, vec![num_complex::Complex::new(l, T::zero())]);
    r.push("counit_unit", dev(&h.eps.matmul(&h.eta), &lozenge));
    r.push("counit_multiplication", dev(&h.eps.matmul(&h.m).scale_real(l), &h.eps.kron(&h.eps)));
    Ok(r)
}

/// `◊²·m(S⊗id)Δ = ηε = ◊²·m(id⊗S)Δ`.
pub fn check_antipode<T: Real>(h: &HopfStructure<T>) -> Result<AxiomReport, HopfError> {
    h.check_shapes()?;
    let d = h.dim;
    let l2 = h.lozenge * h.lozenge;
    let target = h.eta.matmul(&h.eps);
    let left = h.m.matmul(&h.antipode.kron(&id(d))).matmul(&h.delta).scale_real(l2);
    let right = h.m.matmul(&id(d).kron(&h.antipode)).matmul(&h.delta).scale_real(l2);
    let mut r = AxiomReport::new();
    r.push("left_antipode", dev(&left, &target));
    r.push("right_antipode", dev(&right, &target));
    Ok(r)
}

/// Algebra, coalgebra, unnormalized bialgebra and antipode together.
pub fn check_hopf<T: Real>(h: &HopfStructure<T>) -> Result<AxiomReport, HopfError> {
    let mut r = AxiomReport::new();
    for part in [check_algebra(h)?, check_coalgebra(h)?, check_unnormalized_bialgebra(h)?, check_antipode(h)?] {
        r.checks.extend(part.checks);
    }
    Ok(r)
}

/// Algebra and coalgebra laws plus `(id⊗m)(Δ⊗id) = Δm = (m⊗id)(id⊗Δ)`.
pub fn check_f_algebra<T: Real>(
    m: &ComplexMatrix<T>,
    eta: &ComplexMatrix<T>,
    delta: &ComplexMatrix<T>,
    eps: &ComplexMatrix<T>,
) -> Result<AxiomReport, HopfError> {
    let d = shapes_m_eta(m, eta)?;
    if shapes_delta_eps(delta, eps)? != d {
        return Err(HopfError::Shape("algebra and coalgebra dimensions differ".into()));
    }
    let mut r = algebra_report(m, eta)?;
    r.checks.extend(coalgebra_report(delta, eps)?.checks);
    let middle = delta.matmul(m);
    r.push("frobenius_left", dev(&id(d).kron(m).matmul(&delta.kron(&id(d))), &middle));
    r.push("frobenius_right", dev(&m.kron(&id(d)).matmul(&id(d).kron(delta)), &middle));
    Ok(r)
}

/// F-algebra checks for each colour, then full Hopf checks for the two
/// mixed assemblies (each with the antipode and constant of the structure
/// supplying the multiplication).
pub fn check_f_hopf<T: Real>(red: &HopfStructure<T>, green: &HopfStructure<T>) -> Result<AxiomReport, HopfError> {
    red.check_shapes()?;
    green.check_shapes()?;
    if red.dim != green.dim {
        return Err(HopfError::Shape(format!("dimensions differ: {} vs {}", red.dim, green.dim)));
    }
    let mut r = AxiomReport::new();
    r.extend("red", check_f_algebra(&red.m, &red.eta, &red.delta, &red.eps)?);
    r.extend("green", check_f_algebra(&green.m, &green.eta, &green.delta, &green.eps)?);
    r.extend("red_m.green_delta", check_hopf(&HopfStructure::assemble(red, green)?)?);
    r.extend("green_m.red_delta", check_hopf(&HopfStructure::assemble(green, red)?)?);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Hopf, Matrix, C64};
    use std::f64::consts::SQRT_2;

    fn zx() -> (Hopf, Hopf) {
        zx_structures::<f64>()
    }

    fn zx_bialgebra() -> Hopf {
        let (red, green) = zx();
        HopfStructure::assemble(&red, &green).unwrap()
    }

    #[test]
    fn red_zx_algebra_passes() {
        assert!(check_algebra(&zx().0).unwrap().passed());
    }

    #[test]
    fn group_algebra_z2_is_an_algebra_and_coalgebra() {
        let (red, green) = build_group_algebra::<f64>(2);
        let h = HopfStructure::assemble(&red, &green).unwrap();
        assert!(check_algebra(&h).unwrap().passed());
        assert!(check_coalgebra(&h).unwrap().passed());
    }

    #[test]
    fn perturbed_multiplication_fails() {
        let (red, green) = build_group_algebra::<f64>(2);
        let mut h = HopfStructure::assemble(&red, &green).unwrap();
        h.m[(0, 0)] += C64::new(0.1, 0.0);
        let r = check_algebra(&h).unwrap();
        assert!(!r.passed());
        assert!(r.max_deviation() >= 0.1 - 1e-15);
    }

    #[test]
    fn green_zx_coalgebra_passes_and_zero_counit_fails() {
        let green = zx().1;
        assert!(check_coalgebra(&green).unwrap().passed());
        let mut broken = green.clone();
        broken.eps = Matrix::zeros(1, 2);
        let r = check_coalgebra(&broken).unwrap();
        assert!(!r.get("left_counit").unwrap().pass && !r.get("right_counit").unwrap().pass);
    }

    #[test]
    fn zx_bialgebra_needs_root_two() {
        let h = zx_bialgebra();
        assert_eq!(h.lozenge, SQRT_2);
        assert!(check_unnormalized_bialgebra(&h).unwrap().passed());
        let r = check_unnormalized_bialgebra(&h.with_lozenge(1.0)).unwrap();
        assert!(!r.passed());
        // εη = √2 against ◊ = 1
        assert!((r.get("counit_unit").unwrap().deviation - (SQRT_2 - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn monochrome_green_is_not_a_bialgebra() {
        let green = zx().1;
        assert!(!check_unnormalized_bialgebra(&green).unwrap().passed());
    }

    #[test]
    fn antipode_examples() {
        assert!(check_antipode(&zx_bialgebra()).unwrap().passed());
        let (red, green) = build_group_algebra::<f64>(2);
        assert!(check_antipode(&HopfStructure::assemble(&red, &green).unwrap()).unwrap().passed());
        let (red, green) = build_group_algebra::<f64>(3);
        let h = HopfStructure::assemble(&red, &green).unwrap().with_antipode(Matrix::identity(3));
        assert!(!check_antipode(&h).unwrap().passed());
    }

    #[test]
    fn frobenius_pairs() {
        let (red, green) = zx();
        assert!(check_f_algebra(&green.m, &green.eta, &green.delta, &green.eps).unwrap().passed());
        assert!(check_f_algebra(&red.m, &red.eta, &red.delta, &red.eps).unwrap().passed());
        let mixed = check_f_algebra(&red.m, &red.eta, &green.delta, &green.eps).unwrap();
        assert!(!mixed.get("frobenius_left").unwrap().pass);
    }

    #[test]
    fn f_hopf_examples() {
        let (red, green) = zx();
        let r = check_f_hopf(&red, &green).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        let (red2, green2) = build_group_algebra::<f64>(2);
        assert!(check_f_hopf(&red2, &green2).unwrap().passed());
        let (_, green3) = build_group_algebra::<f64>(3);
        assert!(matches!(check_f_hopf(&red, &green3), Err(HopfError::Shape(_))));
    }

    #[test]
    fn rescaling_normalizes() {
        let h = zx_bialgebra();
        let n = rescale_normalized(&h);
        assert_eq!(n.lozenge, 1.0);
        assert!(check_hopf(&n).unwrap().passed());
        // S' = ◊⁻²S breaks the antipode law when ◊ ≠ 1: the left side has
        // entries 1/2 where the rescaled ηε has 1
        let r = check_antipode(&h.rescaled(-2)).unwrap();
        assert!((r.get("left_antipode").unwrap().deviation - 0.5).abs() < 1e-12);
    }

    #[test]
    fn group_algebra_deviations_are_exact() {
        for n in 1..=5 {
            let (red, green) = build_group_algebra::<f64>(n);
            let r = check_f_hopf(&red, &green).unwrap();
            assert!(r.max_deviation() < 1e-14, "n = {n}: {:?}", r.failures());
        }
    }

    #[test]
    fn swap_is_an_involution() {
        let s = swap::<f64>(3);
        assert_eq!(s.matmul(&s), Matrix::identity(9));
        let x = Matrix::identity(81);
        let p = middle_swap(&x, 3);
        assert_eq!(p.matmul(&p), x);
    }

    #[test]
    fn shape_errors() {
        let mut h = zx().0;
        h.eps = Matrix::zeros(1, 3);
        assert!(matches!(check_algebra(&h), Err(HopfError::Shape(_))));
        assert!(HopfStructure::new(
            Matrix::zeros(2, 4),
            Matrix::zeros(2, 1),
            Matrix::zeros(4, 2),
            Matrix::zeros(1, 2),
            Matrix::identity(2),
            0.0
        )
        .is_err());
    }
}
