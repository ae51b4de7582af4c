//! Hermitian operators and their spectral decomposition.
//!
//! Eigendecomposition uses cyclic Jacobi rotations extended to complex
//! Hermitian matrices: each rotation first absorbs the phase of the
//! targeted off-diagonal entry, then applies the classic real rotation.
//! Quadratic convergence makes this exact to near machine precision for
//! the dimensions used here (at most a few hundred).

use alloc::vec::Vec;

// Needed for float math in no_std builds; shadowed by inherent methods otherwise.
#[cfg_attr(feature = "std", allow(unused_imports))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::{tol, Complex};

/// Square complex matrix validated to be Hermitian at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    dim: usize,
    matrix: ComplexMatrix,
}

/// Spectral decomposition `H = V diag(values) V^dag`.
///
/// Eigenvalues are sorted ascending; column `i` of `vectors` is the
/// eigenvector for `values[i]`.
#[derive(Debug, Clone)]
pub struct EigDecomposition {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianOperator {
    /// Wraps a matrix, rejecting non-square or non-Hermitian input.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let dev = matrix.hermiticity_deviation();
        if dev > tol::HERMITICITY {
            return Err(Error::NotHermitian { max_deviation: dev });
        }
        Ok(Self {
            dim: matrix.rows(),
            matrix,
        })
    }

    /// Symmetrizes `(M + M^dag)/2` first; for matrices that are Hermitian
    /// up to roundoff drift.
    pub fn hermitized(matrix: &ComplexMatrix) -> Result<Self> {
        Self::new(matrix.hermitized())
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            matrix: ComplexMatrix::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Real-linear combination `a*self + b*other`; Hermiticity is closed
    /// under these, so no revalidation.
    pub fn linear_combination(&self, a: f64, other: &Self, b: f64) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            matrix: &self.matrix.scale_re(a) + &other.matrix.scale_re(b),
        }
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            matrix: self.matrix.scale_re(factor),
        }
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Expectation value `<v|H|v>` (real for Hermitian `H`).
    pub fn expectation(&self, v: &[Complex]) -> f64 {
        let hv = self.matrix.apply_vec(v).expect("dimension checked by caller");
        v.iter().zip(hv.iter()).map(|(a, b)| (a.conj() * b).re).sum()
    }

    pub fn eig(&self) -> EigDecomposition {
        jacobi_hermitian(&self.matrix)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eig().values.first().copied().unwrap_or(0.0)
    }

    /// Checks the smallest eigenvalue against `-psd_tol`.
    pub fn is_psd(&self, psd_tol: f64) -> bool {
        self.min_eigenvalue() >= -psd_tol
    }

    /// Applies `f` to the spectrum: `V diag(f(w)) V^dag`.
    pub fn spectral_map(&self, f: impl Fn(f64) -> f64) -> Self {
        let EigDecomposition { values, vectors } = self.eig();
        let n = self.dim;
        let mut scaled = vectors.clone();
        for (j, w) in values.iter().enumerate() {
            let fw = f(*w);
            for i in 0..n {
                scaled.set(i, j, scaled.get(i, j) * fw);
            }
        }
        let m = (&scaled * &vectors.adjoint()).hermitized();
        Self { dim: n, matrix: m }
    }

    /// Hermitian PSD square root; small negative roundoff eigenvalues are
    /// clamped to zero.
    pub fn psd_sqrt(&self) -> Self {
        self.spectral_map(|w| if w > 0.0 { w.sqrt() } else { 0.0 })
    }

    /// Pseudo-inverse of the PSD square root: eigenvalues below
    /// `cutoff * max_eigenvalue` are dropped.
    pub fn pinv_of_sqrt(&self, cutoff: f64) -> Self {
        let w_max = self
            .eig()
            .values
            .last()
            .copied()
            .unwrap_or(0.0)
            .max(f64::min_positive_value());
        self.spectral_map(move |w| if w > cutoff * w_max { 1.0 / w.sqrt() } else { 0.0 })
    }
}

/// Validating front end: checks Hermiticity, then diagonalizes.
pub fn eig_hermitian(matrix: &ComplexMatrix) -> Result<EigDecomposition> {
    let h = HermitianOperator::new(matrix.clone())?;
    Ok(h.eig())
}

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
fn jacobi_hermitian(m: &ComplexMatrix) -> EigDecomposition {
    let n = m.rows();
    let mut a = m.clone();
    let mut v = ComplexMatrix::identity(n);
    if n <= 1 {
        return EigDecomposition {
            values: (0..n).map(|i| a.get(i, i).re).collect(),
            vectors: v,
        };
    }

    let frob = a.frobenius_norm().max(f64::min_positive_value());
    let target = frob * 1e-15;
    const MAX_SWEEPS: usize = 64;

    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a.get(p, q).norm_sqr();
            }
        }
        if (2.0 * off).sqrt() <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let gamma = a.get(p, q);
                let g_abs = gamma.norm();
                if g_abs <= target / (n as f64) {
                    continue;
                }
                let alpha = a.get(p, p).re;
                let beta = a.get(q, q).re;
                // Unit phase of the off-diagonal entry.
                let u = gamma / Complex::new(g_abs, 0.0);
                // Real rotation zeroing the phase-stripped off-diagonal.
                let tau = (alpha - beta) / (2.0 * g_abs);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // Columns of the plane rotation: (u*c, s) and (-u*s, c).
                let ub = u.conj();
                for j in 0..n {
                    let apj = a.get(p, j);
                    let aqj = a.get(q, j);
                    a.set(p, j, apj * ub * c + aqj * s);
                    a.set(q, j, -(apj * ub * s) + aqj * c);
                }
                for i in 0..n {
                    let aip = a.get(i, p);
                    let aiq = a.get(i, q);
                    a.set(i, p, aip * u * c + aiq * s);
                    a.set(i, q, -(aip * u * s) + aiq * c);
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, vip * u * c + viq * s);
                    v.set(i, q, -(vip * u * s) + viq * c);
                }
                // Quench roundoff on the zeroed pair and the diagonal.
                a.set(p, q, Complex::new(0.0, 0.0));
                a.set(q, p, Complex::new(0.0, 0.0));
                a.set(p, p, Complex::new(a.get(p, p).re, 0.0));
                a.set(q, q, Complex::new(a.get(q, q).re, 0.0));
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).expect("finite eigenvalues"));

    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v.get(i, order[j]));
    EigDecomposition { values, vectors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn reconstruct(eig: &EigDecomposition) -> ComplexMatrix {
        let n = eig.values.len();
        let mut scaled = eig.vectors.clone();
        for j in 0..n {
            for i in 0..n {
                scaled.set(i, j, scaled.get(i, j) * eig.values[j]);
            }
        }
        &scaled * &eig.vectors.adjoint()
    }

    #[test]
    fn eig_of_diagonal_sorts_ascending() {
        let m = ComplexMatrix::new(2, 2, vec![c(3.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let eig = eig_hermitian(&m).unwrap();
        assert_abs_diff_eq!(eig.values[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(eig.values[1], 3.0, epsilon = 1e-14);
    }

    #[test]
    fn eig_of_pauli_x() {
        let x = ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let eig = eig_hermitian(&x).unwrap();
        assert_abs_diff_eq!(eig.values[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(eig.values[1], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let m = ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn psd_sqrt_squares_back() {
        // H = X + 2I is PSD with eigenvalues {1, 3}.
        let h = HermitianOperator::new(
            ComplexMatrix::new(2, 2, vec![c(2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)]).unwrap(),
        )
        .unwrap();
        let root = h.psd_sqrt();
        let sq = root.matrix() * root.matrix();
        assert!(sq.max_diff(h.matrix()) <= 1e-12);
    }

    #[test]
    fn pinv_of_sqrt_inverts_on_support() {
        // Rank-1 projector scaled by 4: pinv_of_sqrt gives P/2.
        let p = ComplexMatrix::new(2, 2, vec![c(4.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let h = HermitianOperator::new(p).unwrap();
        let inv_root = h.pinv_of_sqrt(1e-12);
        assert_abs_diff_eq!(inv_root.matrix().get(0, 0).re, 0.5, epsilon = 1e-13);
        assert_abs_diff_eq!(inv_root.matrix().get(1, 1).re, 0.0, epsilon = 1e-13);
    }

    fn arb_hermitian(dim: usize) -> impl Strategy<Value = HermitianOperator> {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim * dim).prop_map(move |raw| {
            let m = ComplexMatrix::new(
                dim,
                dim,
                raw.into_iter().map(|(re, im)| c(re, im)).collect(),
            )
            .unwrap();
            HermitianOperator::new(m.hermitized()).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn random_hermitian_8x8_reconstructs(h in arb_hermitian(8)) {
            let eig = h.eig();
            let rebuilt = reconstruct(&eig);
            prop_assert!(rebuilt.max_diff(h.matrix()) <= 1e-10);

            // V unitary within 1e-10.
            let gram = &eig.vectors.adjoint() * &eig.vectors;
            prop_assert!(gram.max_diff(&ComplexMatrix::identity(8)) <= 1e-10);

            // Eigenvalue sum equals the trace.
            let sum: f64 = eig.values.iter().sum();
            prop_assert!((sum - h.trace()).abs() <= 1e-10);
        }
    }
}
