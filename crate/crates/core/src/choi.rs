//! Choi-matrix representation of trace-preserving completely positive
//! maps.
//!
//! The bipartite operator lives on (input ⊗ output) and is obtained from
//! the unnormalized maximally entangled state `sum_i |ii>`, so trace
//! preservation reads `Tr_out[chi] = 1_in` with no dimensional factor.
//! States map through `rho_out = Tr_in[chi (rho_in^T ⊗ 1_out)]`, with the
//! transposition taken in the computational basis.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::eig::HermitianOperator;
use crate::error::{Error, Result};
use crate::fidelity::FidelityOperator;
use crate::matrix::ComplexMatrix;
use crate::multimeter::Povm;
use crate::state::{multimeter_input, ProgramKind, PureState};
use crate::{tol, Complex};

/// Positive semidefinite bipartite operator on (input ⊗ output) with
/// `Tr_out[chi] = 1_in`.
#[derive(Debug, Clone)]
pub struct ChoiMatrix {
    dim_in: usize,
    dim_out: usize,
    matrix: HermitianOperator,
}

impl ChoiMatrix {
    /// Validates Hermiticity (via [`HermitianOperator`]), positivity, and
    /// trace preservation.
    pub fn new(dim_in: usize, dim_out: usize, matrix: HermitianOperator) -> Result<Self> {
        if matrix.dim() != dim_in * dim_out {
            return Err(Error::DimensionMismatch {
                expected: dim_in * dim_out,
                found: matrix.dim(),
            });
        }
        let min_eig = matrix.min_eigenvalue();
        if min_eig < -tol::PSD_CHOI {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue: min_eig });
        }
        let reduced = matrix.matrix().partial_trace(&[dim_in, dim_out], &[0])?;
        let tp_deviation = reduced.max_diff(&ComplexMatrix::identity(dim_in));
        if tp_deviation > tol::PSD_CHOI {
            return Err(Error::NotTracePreserving {
                max_deviation: tp_deviation,
            });
        }
        Ok(Self {
            dim_in,
            dim_out,
            matrix,
        })
    }

    /// Choi matrix of the identity channel, `sum_ij |ii><jj|`.
    pub fn identity_channel(dim: usize) -> Self {
        let mut m = ComplexMatrix::zeros(dim * dim, dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i * dim + i, j * dim + j, Complex::new(1.0, 0.0));
            }
        }
        Self {
            dim_in: dim,
            dim_out: dim,
            matrix: HermitianOperator::new(m).expect("identity channel is Hermitian"),
        }
    }

    /// Completely depolarizing channel `1_in ⊗ 1_out / dim_out`.
    pub fn depolarizing_channel(dim_in: usize, dim_out: usize) -> Self {
        let m = ComplexMatrix::identity(dim_in * dim_out).scale_re(1.0 / dim_out as f64);
        Self {
            dim_in,
            dim_out,
            matrix: HermitianOperator::new(m).expect("scaled identity is Hermitian"),
        }
    }

    /// Measure-and-prepare map for a two-outcome POVM: outcome `k` of the
    /// measurement prepares the computational state `|k>`. The Choi matrix
    /// is `sum_k E_k^T ⊗ |k><k|`.
    pub fn measure_and_prepare(povm: &Povm) -> Result<Self> {
        let dim_in = povm.dim();
        let dim_out = povm.len();
        let mut total = ComplexMatrix::zeros(dim_in * dim_out, dim_in * dim_out);
        for (k, element) in povm.elements().iter().enumerate() {
            let mut out_proj = ComplexMatrix::zeros(dim_out, dim_out);
            out_proj.set(k, k, Complex::new(1.0, 0.0));
            total = &total + &element.matrix().transposed().tensor(&out_proj);
        }
        Self::new(dim_in, dim_out, HermitianOperator::new(total)?)
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn matrix(&self) -> &HermitianOperator {
        &self.matrix
    }

    /// Applies the map: `rho_out = Tr_in[chi (rho_in^T ⊗ 1_out)]`.
    pub fn apply(&self, rho_in: &HermitianOperator) -> Result<HermitianOperator> {
        if rho_in.dim() != self.dim_in {
            return Err(Error::DimensionMismatch {
                expected: self.dim_in,
                found: rho_in.dim(),
            });
        }
        let lifted = rho_in
            .matrix()
            .transposed()
            .tensor(&ComplexMatrix::identity(self.dim_out));
        let product = self.matrix.matrix() * &lifted;
        let reduced = product.partial_trace(&[self.dim_in, self.dim_out], &[1])?;
        HermitianOperator::hermitized(&reduced)
    }

    /// Mean fidelity `Tr[R chi]` for a compatible figure-of-merit operator.
    pub fn mean_fidelity(&self, r: &FidelityOperator) -> Result<f64> {
        if r.r_total().dim() != self.matrix.dim() || self.dim_out != 2 {
            return Err(Error::DimensionMismatch {
                expected: r.r_total().dim(),
                found: self.matrix.dim(),
            });
        }
        let value = r.r_total().matrix().trace_product(self.matrix.matrix());
        debug_assert!(value.im.abs() <= 1e-10, "fidelity has imaginary residue {}", value.im);
        Ok(value.re)
    }

    /// Pointwise fidelity for a specific basis state `psi`: the averaged
    /// probability of the correct outcome for inputs driven by `psi` and
    /// by its orthogonal companion.
    pub fn pointwise_fidelity(&self, psi: &PureState, kind: ProgramKind, n: usize) -> Result<f64> {
        let (big, big_perp) = multimeter_input(psi, kind, n)?;
        if big.dim() != self.dim_in || self.dim_out != 2 {
            return Err(Error::DimensionMismatch {
                expected: self.dim_in,
                found: big.dim(),
            });
        }
        let mut value = 0.0;
        for (state, outcome) in [(&big, 0usize), (&big_perp, 1usize)] {
            let mut out_proj = ComplexMatrix::zeros(2, 2);
            out_proj.set(outcome, outcome, Complex::new(1.0, 0.0));
            let lifted = state.projector().transposed().tensor(&out_proj);
            value += 0.5 * self.matrix.matrix().trace_product(&lifted).re;
        }
        Ok(value)
    }

    /// Two-outcome POVM realized by applying the map and measuring the
    /// output qubit in the computational basis:
    /// `E_k = (Tr_out[chi (1_in ⊗ |k><k|)])^T`.
    pub fn induced_povm(&self) -> Result<Povm> {
        let mut elements = Vec::with_capacity(self.dim_out);
        for k in 0..self.dim_out {
            let mut out_proj = ComplexMatrix::zeros(self.dim_out, self.dim_out);
            out_proj.set(k, k, Complex::new(1.0, 0.0));
            let lifted = ComplexMatrix::identity(self.dim_in).tensor(&out_proj);
            let product = self.matrix.matrix() * &lifted;
            let reduced = product.partial_trace(&[self.dim_in, self.dim_out], &[0])?;
            elements.push(HermitianOperator::hermitized(&reduced.transposed())?);
        }
        let labels = (0..self.dim_out)
            .map(|k| match k {
                0 => "par".to_string(),
                1 => "perp".to_string(),
                other => other.to_string(),
            })
            .collect();
        Povm::new(elements, labels)
    }
}
