//! The mean-fidelity figure of merit as an operator.
//!
//! Averaging the success probability of basis discrimination over the
//! Bloch sphere turns the objective into `Tr[R chi]` for a fixed operator
//! `R = R_plus ⊗ |0><0| + R_minus ⊗ |1><1|`, where the halves are Bloch
//! averages of the transposed input projectors. This module builds `R`
//! three ways: from symmetric-projector closed forms (identical programs),
//! from a deterministic product quadrature over the sphere (exact for the
//! trigonometric-polynomial integrands that occur here), and from seeded
//! Monte-Carlo averaging.

use alloc::vec::Vec;

// Needed for float math in no_std builds; shadowed by inherent methods otherwise.
#[cfg_attr(feature = "std", allow(unused_imports))]
use num_traits::Float;

use crate::eig::HermitianOperator;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::state::{bloch_state, multimeter_input, BlochPoint, BlochSampler, ProgramKind};
use crate::symmetric::{input_space_projector, symmetric_projector};
use crate::{tol, Complex};

const PI: f64 = core::f64::consts::PI;

/// Figure-of-merit operator for a program choice, split into the halves
/// rewarding the two outcomes.
///
/// `r_plus` and `r_minus` act on the (signal ⊗ program) input space;
/// `r_total` acts on (input ⊗ output qubit). For identical programs the
/// halves sum to the input-space identity scaled by `1/[2(n+1)]`, where
/// the identity on the reachable input space embeds as
/// [`input_space_projector`].
#[derive(Debug, Clone)]
pub struct FidelityOperator {
    kind: ProgramKind,
    n_program: usize,
    r_plus: HermitianOperator,
    r_minus: HermitianOperator,
    r_total: HermitianOperator,
}

impl FidelityOperator {
    /// Assembles `R` from its halves, checking dimensions and positivity.
    pub fn from_parts(
        kind: ProgramKind,
        n: usize,
        r_plus: HermitianOperator,
        r_minus: HermitianOperator,
    ) -> Result<Self> {
        let qubits = 1 + kind.program_qubits(n)?;
        let dim_in = 1usize << qubits;
        for half in [&r_plus, &r_minus] {
            if half.dim() != dim_in {
                return Err(Error::DimensionMismatch {
                    expected: dim_in,
                    found: half.dim(),
                });
            }
            let min_eig = half.min_eigenvalue();
            if min_eig < -tol::PSD_EXACT {
                return Err(Error::NotPositiveSemidefinite { min_eigenvalue: min_eig });
            }
        }
        let mut out0 = ComplexMatrix::zeros(2, 2);
        out0.set(0, 0, Complex::new(1.0, 0.0));
        let mut out1 = ComplexMatrix::zeros(2, 2);
        out1.set(1, 1, Complex::new(1.0, 0.0));
        let total = &r_plus.matrix().tensor(&out0) + &r_minus.matrix().tensor(&out1);
        Ok(Self {
            kind,
            n_program: n,
            r_plus,
            r_minus,
            r_total: HermitianOperator::new(total).expect("blocks are Hermitian"),
        })
    }

    pub fn kind(&self) -> ProgramKind {
        self.kind
    }

    pub fn n_program(&self) -> usize {
        self.n_program
    }

    /// Dimension of the (signal ⊗ program) input space.
    pub fn dim_in(&self) -> usize {
        self.r_plus.dim()
    }

    pub fn r_plus(&self) -> &HermitianOperator {
        &self.r_plus
    }

    pub fn r_minus(&self) -> &HermitianOperator {
        &self.r_minus
    }

    pub fn r_total(&self) -> &HermitianOperator {
        &self.r_total
    }

    /// Projector onto the reachable input space (see [`input_space_projector`]).
    pub fn input_projector(&self) -> HermitianOperator {
        input_space_projector(self.kind, self.n_program).expect("kind/n validated at construction")
    }
}

/// Closed-form `R`.
///
/// For `n` identical program copies, the plus half is the symmetric
/// projector on `n + 1` qubits scaled by `1/[2(n+2)]`, and the halves sum
/// to the input-space identity over `2(n+1)`. For the orthogonal program
/// no closed form is used; the Bloch average is evaluated by a product
/// quadrature refined until two refinements agree to better than 1e-10
/// (the integrand is a trigonometric polynomial, so the grid is exact once
/// fine enough).
pub fn build_r_analytic(kind: ProgramKind, n: usize) -> Result<FidelityOperator> {
    match kind {
        ProgramKind::Identical => {
            kind.program_qubits(n)?;
            let r_plus = symmetric_projector(n + 1).scale(1.0 / (2.0 * (n as f64 + 2.0)));
            let subspace_identity = input_space_projector(kind, n)?;
            let r_minus = subspace_identity.linear_combination(1.0 / (2.0 * (n as f64 + 1.0)), &r_plus, -1.0);
            FidelityOperator::from_parts(kind, n, r_plus, r_minus)
        }
        ProgramKind::Orthogonal => {
            let mut nodes_u = 8usize;
            let mut nodes_phi = 16usize;
            let mut current = build_r_quadrature(kind, n, nodes_u, nodes_phi)?;
            for _ in 0..4 {
                nodes_u *= 2;
                nodes_phi *= 2;
                let refined = build_r_quadrature(kind, n, nodes_u, nodes_phi)?;
                let diff = current
                    .r_total()
                    .matrix()
                    .max_diff(refined.r_total().matrix());
                current = refined;
                if diff < tol::QUADRATURE {
                    return Ok(current);
                }
            }
            // Unreachable for polynomial integrands; refuse to hand back an
            // unconverged average.
            Err(Error::OutOfRange {
                name: "quadrature refinement",
                value: f64::nan(),
            })
        }
    }
}

/// `R` from the seeded Monte-Carlo average over uniform Bloch samples.
pub fn build_r_montecarlo(kind: ProgramKind, n: usize, samples: usize, seed: u64) -> Result<FidelityOperator> {
    if samples == 0 {
        return Err(Error::OutOfRange {
            name: "samples",
            value: 0.0,
        });
    }
    let weight = 1.0 / samples as f64;
    let mut sampler = BlochSampler::new(seed);
    build_r_from_points(kind, n, (0..samples).map(move |_| (sampler.next_point(), weight)))
}

/// `R` from a deterministic product grid: Gauss-Legendre in `cos(theta)`,
/// uniform trapezoid in `phi`.
pub fn build_r_quadrature(kind: ProgramKind, n: usize, nodes_u: usize, nodes_phi: usize) -> Result<FidelityOperator> {
    build_r_from_points(kind, n, bloch_quadrature_grid(nodes_u, nodes_phi))
}

/// Weighted-average core shared by the quadrature and Monte-Carlo builds:
/// `R_plus^T` accumulates `w/2 |Psi><Psi|` and `R_minus^T` the orthogonal
/// companion, then both are transposed in the computational basis.
pub fn build_r_from_points(
    kind: ProgramKind,
    n: usize,
    points: impl IntoIterator<Item = (BlochPoint, f64)>,
) -> Result<FidelityOperator> {
    let qubits = 1 + kind.program_qubits(n)?;
    let dim = 1usize << qubits;
    let mut acc_plus = ComplexMatrix::zeros(dim, dim);
    let mut acc_minus = ComplexMatrix::zeros(dim, dim);
    for (point, weight) in points {
        let psi = bloch_state(point);
        let (big, big_perp) = multimeter_input(&psi, kind, n)?;
        accumulate_outer(&mut acc_plus, big.amplitudes(), weight);
        accumulate_outer(&mut acc_minus, big_perp.amplitudes(), weight);
    }
    let r_plus = HermitianOperator::hermitized(&acc_plus.scale_re(0.5).transposed())?;
    let r_minus = HermitianOperator::hermitized(&acc_minus.scale_re(0.5).transposed())?;
    FidelityOperator::from_parts(kind, n, r_plus, r_minus)
}

fn accumulate_outer(acc: &mut ComplexMatrix, v: &[Complex], weight: f64) {
    for (i, vi) in v.iter().enumerate() {
        let wi = vi * weight;
        for (j, vj) in v.iter().enumerate() {
            let add = wi * vj.conj();
            let cur = acc.get(i, j);
            acc.set(i, j, cur + add);
        }
    }
}

/// Product quadrature grid for the uniform Bloch measure; weights sum to 1.
pub fn bloch_quadrature_grid(nodes_u: usize, nodes_phi: usize) -> Vec<(BlochPoint, f64)> {
    let gl = gauss_legendre(nodes_u);
    let mut grid = Vec::with_capacity(nodes_u * nodes_phi);
    for &(u, w) in &gl {
        let theta = u.clamp(-1.0, 1.0).acos();
        for k in 0..nodes_phi {
            let phi = 2.0 * PI * k as f64 / nodes_phi as f64;
            grid.push((BlochPoint { theta, phi }, w / (2.0 * nodes_phi as f64)));
        }
    }
    grid
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration on
/// the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                let (_, d) = legendre_with_derivative(n, x);
                dp = d;
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite nodes"));
    out
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0f64;
    let mut p = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p_next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = p_next;
    }
    let d = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        // 5 nodes are exact through degree 9: check x^8 over [-1, 1].
        let nodes = gauss_legendre(5);
        let total: f64 = nodes.iter().map(|(_, w)| w).sum();
        assert_abs_diff_eq!(total, 2.0, epsilon = 1e-13);
        let int: f64 = nodes.iter().map(|(x, w)| w * x.powi(8)).sum();
        assert_abs_diff_eq!(int, 2.0 / 9.0, epsilon = 1e-13);
    }

    #[test]
    fn identical_closed_form_traces_and_sum() {
        let r = build_r_analytic(ProgramKind::Identical, 1).unwrap();
        // Tr R_plus = (n+2)/[2(n+2)] = 1/2.
        assert_abs_diff_eq!(r.r_plus().trace(), 0.5, epsilon = 1e-12);
        // Halves sum to the identity over 2(n+1) = 4 in the n = 1 case.
        let sum = r.r_plus().linear_combination(1.0, r.r_minus(), 1.0);
        assert!(sum.matrix().max_diff(&ComplexMatrix::identity(4).scale_re(0.25)) <= 1e-10);
        assert_abs_diff_eq!(r.r_total().trace(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn identical_halves_sum_to_subspace_identity() {
        for n in 1..=4usize {
            let r = build_r_analytic(ProgramKind::Identical, n).unwrap();
            let sum = r.r_plus().linear_combination(1.0, r.r_minus(), 1.0);
            let expected = r.input_projector().scale(1.0 / (2.0 * (n as f64 + 1.0)));
            assert!(sum.matrix().max_diff(expected.matrix()) <= 1e-10);
            assert_abs_diff_eq!(r.r_total().trace(), 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn minus_half_acts_as_scalar_on_symmetric_subspace() {
        for n in 1..=3usize {
            let r = build_r_analytic(ProgramKind::Identical, n).unwrap();
            let proj = symmetric_projector(n + 1);
            let product = r.r_minus().matrix() * proj.matrix();
            let coeff = 1.0 / (2.0 * (n as f64 + 1.0)) - 1.0 / (2.0 * (n as f64 + 2.0));
            assert!(product.max_diff(&proj.matrix().scale_re(coeff)) <= 1e-10);
        }
    }

    #[test]
    fn quadrature_matches_identical_closed_form() {
        for n in 1..=3usize {
            let analytic = build_r_analytic(ProgramKind::Identical, n).unwrap();
            let quad = build_r_quadrature(ProgramKind::Identical, n, n + 4, 2 * n + 6).unwrap();
            assert!(
                quad.r_total().matrix().max_diff(analytic.r_total().matrix()) <= 1e-12,
                "quadrature deviates from closed form at n = {n}"
            );
        }
    }

    #[test]
    fn orthogonal_analytic_properties() {
        let r = build_r_analytic(ProgramKind::Orthogonal, 2).unwrap();
        assert_abs_diff_eq!(r.r_plus().trace(), 0.5, epsilon = 1e-10);
        assert_abs_diff_eq!(r.r_minus().trace(), 0.5, epsilon = 1e-10);
        assert_abs_diff_eq!(r.r_total().trace(), 1.0, epsilon = 1e-10);

        // Coarse and fine grids agree: the integrand is a trig polynomial.
        let coarse = build_r_quadrature(ProgramKind::Orthogonal, 2, 8, 16).unwrap();
        assert!(coarse.r_total().matrix().max_diff(r.r_total().matrix()) <= 1e-12);
    }

    #[test]
    fn single_point_average_is_transposed_projector() {
        let point = BlochPoint { theta: 0.0, phi: 0.0 };
        let r = build_r_from_points(ProgramKind::Identical, 1, [(point, 1.0)]).unwrap();
        // psi = |0>, so R_plus^T = |00><00| / 2 exactly.
        let mut expected = ComplexMatrix::zeros(4, 4);
        expected.set(0, 0, Complex::new(0.5, 0.0));
        assert!(r.r_plus().matrix().transposed().max_diff(&expected) <= 1e-15);
    }

    #[test]
    fn montecarlo_converges_to_analytic() {
        let analytic = build_r_analytic(ProgramKind::Identical, 1).unwrap();
        let mc = build_r_montecarlo(ProgramKind::Identical, 1, 200_000, 5).unwrap();
        let diff = mc.r_total().matrix().max_diff(analytic.r_total().matrix());
        assert!(diff <= 1e-2, "Monte-Carlo deviates by {diff}");

        let mc_again = build_r_montecarlo(ProgramKind::Identical, 1, 1000, 9).unwrap();
        let mc_same = build_r_montecarlo(ProgramKind::Identical, 1, 1000, 9).unwrap();
        assert_eq!(
            mc_again.r_total().matrix().entries(),
            mc_same.r_total().matrix().entries()
        );
    }

    #[test]
    fn psd_validation_rejects_negative_halves() {
        let neg = HermitianOperator::new(ComplexMatrix::identity(4).scale_re(-1.0)).unwrap();
        let pos = HermitianOperator::new(ComplexMatrix::identity(4)).unwrap();
        assert!(matches!(
            FidelityOperator::from_parts(ProgramKind::Identical, 1, neg, pos),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
    }
}
