// SPDX-License-Identifier: Apache-2.0

//! Tolerance constants. Two tiers: `STRUCT_TOL` for constructor-level
//! exactness and `EQ_TOL` for semantic equality after contraction.

/// Semantic equality of evaluated diagrams / operators.
pub const EQ_TOL: f64 = 1e-9;
/// Structural invariants (norms, Hermiticity, trace).
pub const STRUCT_TOL: f64 = 1e-12;
/// Eigenvalues within this distance below zero are clamped to zero.
pub const EIG_CLAMP: f64 = 1e-10;
/// Idempotence threshold for purity.
pub const PURITY_TOL: f64 = 1e-10;
/// Accepted deviation of a state norm from 1 at construction boundaries.
pub const NORM_TOL: f64 = 1e-9;
/// Axiom checks pass at this deviation.
pub const AXIOM_TOL: f64 = 1e-12;
/// Eigenvalue sums at or below this use the zero convention in the SLD.
pub const SLD_KERNEL_TOL: f64 = 1e-12;
/// Environment variable that overrides [`EQ_TOL`] for the CLI.
pub const EQ_TOL_ENV: &str = "ZXFORGE_TOL";

/// `EQ_TOL`, or the value of `ZXFORGE_TOL` when it parses as a positive float.
pub fn eq_tol_from_env() -> f64 {
    std::env::var(EQ_TOL_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|t| t.is_finite() && *t > 0.0)
        .unwrap_or(EQ_TOL)
}
