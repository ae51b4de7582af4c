//! Maximization of the mean fidelity over trace-preserving CP maps.
//!
//! The objective `Tr[R chi]` is linear and the feasible set convex, so a
//! map is globally optimal iff it solves the extremal equations
//!
//! ```text
//! (lambda ⊗ 1_out - R) chi = 0,      lambda ⊗ 1_out - R >= 0,
//! ```
//!
//! with `lambda = Tr_out[R chi]` Hermitian on the input space. The solver
//! runs the standard trace-preserving fixed-point iteration
//!
//! ```text
//! lambda_k = (Tr_out[R chi_k R])^(1/2),
//! chi_{k+1} = (lambda_k^-1 ⊗ 1) R chi_k R (lambda_k^-1 ⊗ 1),
//! ```
//!
//! which preserves positivity and trace preservation by construction
//! (the inverse is an eigenvalue pseudo-inverse; equivalently the sandwich
//! is the `-1/2` power of `Tr_out[R chi_k R]`). When `lambda_k` is rank
//! deficient the iterate is trace preserving only on its support, so the
//! final iterate is padded with a depolarizing completion on the
//! orthogonal complement; the objective never rewards that subspace, so
//! the fidelity and the certificate are unaffected.

use alloc::vec::Vec;

use crate::choi::ChoiMatrix;
use crate::eig::HermitianOperator;
use crate::error::{Error, Result};
use crate::fidelity::FidelityOperator;
use crate::matrix::ComplexMatrix;
use crate::multimeter::{joint_povm_identical, joint_povm_orthogonal};
use crate::state::ProgramKind;
use crate::symmetric::{input_space_projector, symmetric_projector};
use crate::tol;

/// Iteration controls; `Default` matches the documented defaults.
#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    pub max_iters: usize,
    /// Frobenius step-norm threshold; the fidelity step alternative uses
    /// its square.
    pub convergence_tol: f64,
    /// Certificate slack for both extremal residuals.
    pub psd_tol: f64,
    /// Relative eigenvalue cutoff for the pseudo-inverse of `lambda`.
    pub pinv_cutoff: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_iters: 10_000,
            convergence_tol: tol::CONVERGENCE,
            psd_tol: tol::PSD_CERTIFICATE,
            pinv_cutoff: tol::PINV_CUTOFF,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iters == 0 {
            return Err(Error::OutOfRange {
                name: "max_iters",
                value: 0.0,
            });
        }
        if self.convergence_tol.is_nan() || self.convergence_tol < 1e-14 {
            return Err(Error::OutOfRange {
                name: "convergence_tol",
                value: self.convergence_tol,
            });
        }
        for (name, value) in [("psd_tol", self.psd_tol), ("pinv_cutoff", self.pinv_cutoff)] {
            if value.is_nan() || value <= 0.0 {
                return Err(Error::OutOfRange { name, value });
            }
        }
        Ok(())
    }
}

/// One row of the iteration log.
#[derive(Debug, Clone, Copy)]
pub struct IterationRecord {
    pub iter: usize,
    pub fidelity: f64,
    pub step_norm: f64,
    pub min_eig: f64,
}

/// Evaluation of the extremal equations on a candidate map.
#[derive(Debug, Clone)]
pub struct OptimalityCertificate {
    /// `Tr_out[R chi]`, symmetrized.
    pub lambda: HermitianOperator,
    /// Frobenius norm of `(lambda ⊗ 1 - R) chi` (stationarity).
    pub stationarity_residual: f64,
    /// Smallest eigenvalue of `lambda ⊗ 1 - R` (dual feasibility).
    pub dual_min_eigenvalue: f64,
    pub fidelity: f64,
    /// Both residuals within tolerance; forced false by [`solve`] when the
    /// iteration did not converge.
    pub passed: bool,
}

/// Result of [`solve`]: optimized map, certificate, and per-step log.
#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub chi: ChoiMatrix,
    pub certificate: OptimalityCertificate,
    pub log: Vec<IterationRecord>,
    pub converged: bool,
    pub iterations: usize,
}

/// Runs the fixed-point iteration from `chi0` (default: the completely
/// depolarizing map) until the step norm drops below the configured
/// threshold or `max_iters` is exhausted.
pub fn solve(r: &FidelityOperator, cfg: &SolverConfig, chi0: Option<&ChoiMatrix>) -> Result<SolveOutcome> {
    cfg.validate()?;
    let dim_in = r.dim_in();
    let dim_out = 2usize;
    let r_mat = r.r_total().matrix();

    let mut chi = match chi0 {
        Some(start) => {
            if start.dim_in() != dim_in || start.dim_out() != dim_out {
                return Err(Error::DimensionMismatch {
                    expected: dim_in * dim_out,
                    found: start.dim_in() * start.dim_out(),
                });
            }
            start.matrix().matrix().clone()
        }
        None => ComplexMatrix::identity(dim_in * dim_out).scale_re(1.0 / dim_out as f64),
    };

    let mut log = Vec::new();
    let mut fidelity = r_mat.trace_product(&chi).re;
    log.push(IterationRecord {
        iter: 0,
        fidelity,
        step_norm: 0.0,
        min_eig: HermitianOperator::hermitized(&chi)?.min_eigenvalue(),
    });

    let mut converged = false;
    let mut iterations = 0;
    for iter in 1..=cfg.max_iters {
        iterations = iter;
        let r_chi_r = &(r_mat * &chi) * r_mat;
        let squared_lambda =
            HermitianOperator::hermitized(&r_chi_r.partial_trace(&[dim_in, dim_out], &[0])?)?;
        let inv_lambda = squared_lambda
            .pinv_of_sqrt(cfg.pinv_cutoff)
            .into_matrix()
            .tensor(&ComplexMatrix::identity(dim_out));
        let next = (&(&inv_lambda * &r_chi_r) * &inv_lambda).hermitized();

        let step_norm = (&next - &chi).frobenius_norm();
        let next_fidelity = r_mat.trace_product(&next).re;
        let fidelity_step = (next_fidelity - fidelity).abs();
        log.push(IterationRecord {
            iter,
            fidelity: next_fidelity,
            step_norm,
            min_eig: HermitianOperator::hermitized(&next)?.min_eigenvalue(),
        });
        chi = next;
        fidelity = next_fidelity;
        if step_norm < cfg.convergence_tol || fidelity_step < cfg.convergence_tol * cfg.convergence_tol {
            converged = true;
            break;
        }
    }

    // Depolarizing completion on the complement of the iterate's support,
    // restoring trace preservation on the full input space.
    let marginal = chi.partial_trace(&[dim_in, dim_out], &[0])?;
    let deficit = &ComplexMatrix::identity(dim_in) - &marginal;
    if deficit.max_norm() > 1e-13 {
        let pad = deficit.tensor(&ComplexMatrix::identity(dim_out).scale_re(1.0 / dim_out as f64));
        chi = (&chi + &pad).hermitized();
    }

    let chi = ChoiMatrix::new(dim_in, dim_out, HermitianOperator::hermitized(&chi)?)?;
    let mut certificate = certify(&chi, r, cfg.psd_tol)?;
    if !converged {
        certificate.passed = false;
    }
    Ok(SolveOutcome {
        chi,
        certificate,
        log,
        converged,
        iterations,
    })
}

/// Evaluates the extremal equations on `chi` with slack `psd_tol`.
pub fn certify(chi: &ChoiMatrix, r: &FidelityOperator, psd_tol: f64) -> Result<OptimalityCertificate> {
    let dim_in = chi.dim_in();
    let dim_out = chi.dim_out();
    if r.r_total().dim() != dim_in * dim_out {
        return Err(Error::DimensionMismatch {
            expected: r.r_total().dim(),
            found: dim_in * dim_out,
        });
    }
    let r_mat = r.r_total().matrix();
    let chi_mat = chi.matrix().matrix();

    let lambda = HermitianOperator::hermitized(&(r_mat * chi_mat).partial_trace(&[dim_in, dim_out], &[0])?)?;
    let lifted = &lambda.matrix().tensor(&ComplexMatrix::identity(dim_out)) - r_mat;
    let stationarity_residual = (&lifted * chi_mat).frobenius_norm();
    let dual_min_eigenvalue = HermitianOperator::hermitized(&lifted)?.min_eigenvalue();
    let fidelity = chi.mean_fidelity(r)?;
    Ok(OptimalityCertificate {
        lambda,
        stationarity_residual,
        dual_min_eigenvalue,
        fidelity,
        passed: stationarity_residual <= psd_tol && dual_min_eigenvalue >= -psd_tol,
    })
}

/// Conjectured optimal map in closed form: the measure-and-prepare map of
/// the joint POVM (symmetric projector and complement for identical
/// programs; the completed three-qubit POVM for the orthogonal pair).
pub fn closed_form_chi(kind: ProgramKind, n: usize) -> Result<ChoiMatrix> {
    let povm = match kind {
        ProgramKind::Identical => joint_povm_identical(n)?,
        ProgramKind::Orthogonal => {
            kind.program_qubits(n)?;
            joint_povm_orthogonal()?
        }
    };
    ChoiMatrix::measure_and_prepare(&povm)
}

/// Closed-form multiplier for `n` identical copies:
/// `lambda = P_in/[2(n+1)] - sym_projector(n+1)/[2(n+1)(n+2)]`, with
/// `P_in` the reachable-input-space projector.
pub fn closed_form_lambda_identical(n: usize) -> Result<HermitianOperator> {
    ProgramKind::Identical.program_qubits(n)?;
    let nf = n as f64;
    let p_in = input_space_projector(ProgramKind::Identical, n)?;
    let sym = symmetric_projector(n + 1);
    Ok(p_in.linear_combination(
        1.0 / (2.0 * (nf + 1.0)),
        &sym,
        -1.0 / (2.0 * (nf + 1.0) * (nf + 2.0)),
    ))
}

/// Dual-feasibility blocks `(lambda - R_minus, lambda - R_plus)`; both
/// must be PSD at a global optimum.
pub fn certificate_blocks(
    lambda: &HermitianOperator,
    r: &FidelityOperator,
) -> (HermitianOperator, HermitianOperator) {
    (
        lambda.linear_combination(1.0, r.r_minus(), -1.0),
        lambda.linear_combination(1.0, r.r_plus(), -1.0),
    )
}
