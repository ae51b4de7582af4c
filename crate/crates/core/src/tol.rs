//! Numerical tolerances used by constructors and validators.
//!
//! Double precision leaves ample headroom for the dimensions handled here
//! (at most a few hundred), so exact algebraic identities are enforced near
//! machine precision while iteratively computed objects get looser bounds.

/// Entrywise Hermiticity and unitarity checks.
pub const HERMITICITY: f64 = 1e-12;

/// State-vector normalization and overlap checks.
pub const NORMALIZATION: f64 = 1e-12;

/// Spectral reconstruction error allowed for the Jacobi eigensolver.
pub const SPECTRAL: f64 = 1e-10;

/// Negative-eigenvalue slack for operators that are PSD by construction.
pub const PSD_EXACT: f64 = 1e-10;

/// Negative-eigenvalue and trace-preservation slack for Choi matrices,
/// looser than [`PSD_EXACT`] because solver iterates accumulate
/// eigendecomposition roundoff.
pub const PSD_CHOI: f64 = 1e-9;

/// Default certificate slack for the extremal-equation residuals.
pub const PSD_CERTIFICATE: f64 = 1e-7;

/// Relative eigenvalue cutoff for pseudo-inverses.
pub const PINV_CUTOFF: f64 = 1e-12;

/// Fixed-point iteration step-norm convergence threshold.
pub const CONVERGENCE: f64 = 1e-10;

/// Quadrature grids are refined until two refinements agree this closely.
pub const QUADRATURE: f64 = 1e-10;
