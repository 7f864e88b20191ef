// SPDX-License-Identifier: Apache-2.0

//! Classical and quantum information geometry on parametrized families.
//!
//! Derivatives are analytic when a family supplies them and central
//! finite differences otherwise (default step `1e-5`).

mod classical;
mod families;
mod geometry;
mod quantum;

use thiserror::Error;

pub use classical::{fisher_matrix, kl_divergence, kl_quadratic_check, score_covariance, shannon_entropy, KlReport, KlRow};
pub use families::{
    bernoulli, bloch_theta, chart, constant_density, constant_distribution, constant_state, diag_qubit, random_qubit_family,
    random_softmax, softmax, DensityFamily, ProbFamily, StateFamily,
};
pub use geometry::{fs_pullback, fubini_study, kahler_check, kahler_hessian, qgt};
pub use quantum::{qfi, qfi_report, sld, QfiMethod, QfiReport, SldResult};

/// Step for first derivatives.
pub const FD_STEP: f64 = 1e-5;
/// Step for the mixed second derivatives of the Kähler potential.
pub const FD_STEP_SECOND: f64 = 1e-4;
/// Probabilities at or below this violate the support condition.
pub const SUPPORT_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InfoGeoError {
    #[error("outcome {index} has probability {value:e}, below the support threshold")]
    DegenerateSupport { index: usize, value: f64 },
    #[error("state has squared norm {norm_sqr:e}")]
    ZeroState { norm_sqr: f64 },
    #[error("invalid probability vector: {0}")]
    InvalidDistribution(String),
    #[error("invalid density operator: {0}")]
    InvalidDensity(String),
    #[error("shape error: {0}")]
    Shape(String),
}
