// SPDX-License-Identifier: Apache-2.0

//! zxforge: ZX-diagram rewriting with evaluator-checked soundness, a small
//! dense circuit simulator, numerical verification of (unnormalized and
//! F-) Hopf structures, and classical/quantum information geometry.
//!
//! All numeric code is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the double-precision instantiation used by the CLI and the
//! acceptance suite. Spider phases and gate angles are exact rational
//! multiples of π ([`Phase`]).

pub mod circuits;
pub mod hopf;
pub mod infogeo;
pub mod qcore;
pub mod phase;
pub mod scalar;
pub mod tol;
pub mod zxgraph;
pub mod zxrules;

pub use num_complex::Complex;
pub use scalar::Real;
pub use phase::Phase;

/// Double-precision complex amplitude.
pub type C64 = Complex<f64>;
/// Single-precision complex amplitude.
pub type C32 = Complex<f32>;

pub type Matrix = qcore::ComplexMatrix<f64>;
pub type Matrix32 = qcore::ComplexMatrix<f32>;
pub type State = qcore::StateVector<f64>;
pub type Density = qcore::DensityOperator<f64>;

/// Double-precision structure tensors for the Hopf checks.
pub type Hopf = hopf::HopfStructure<f64>;
