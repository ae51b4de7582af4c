//! Joint and effective POVMs of the programmable multimeter.
//!
//! The optimal joint measurement on (signal ⊗ program) reduces, for a
//! fixed program state, to a two-outcome POVM on the signal qubit alone.
//! Outcome 0 ("par") is the click associated with the programmed basis
//! state, outcome 1 ("perp") with its orthogonal companion.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

// Needed for float math in no_std builds; shadowed by inherent methods otherwise.
#[cfg_attr(feature = "std", allow(unused_imports))]
use num_traits::Float;

use crate::eig::HermitianOperator;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::state::{orthogonal_state, ProgramKind, PureState};
use crate::symmetric::symmetric_projector;
use crate::{tol, Complex};

/// Ordered list of PSD operators summing to the identity.
#[derive(Debug, Clone)]
pub struct Povm {
    elements: Vec<HermitianOperator>,
    labels: Vec<String>,
}

impl Povm {
    /// Validates positivity of each element and completeness of the sum.
    pub fn new(elements: Vec<HermitianOperator>, labels: Vec<String>) -> Result<Self> {
        let dim = elements.first().map(|e| e.dim()).unwrap_or(0);
        if dim == 0 || elements.len() != labels.len() {
            return Err(Error::InvalidSubsystems(
                "POVM needs at least one element and one label per element".to_string(),
            ));
        }
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for element in &elements {
            if element.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: element.dim(),
                });
            }
            let min_eig = element.min_eigenvalue();
            if min_eig < -tol::PSD_EXACT {
                return Err(Error::NotPositiveSemidefinite { min_eigenvalue: min_eig });
            }
            sum = &sum + element.matrix();
        }
        let completeness = sum.max_diff(&ComplexMatrix::identity(dim));
        if completeness > tol::PSD_EXACT {
            return Err(Error::IncompleteValue {
                max_deviation: completeness,
            });
        }
        Ok(Self { elements, labels })
    }

    pub fn dim(&self) -> usize {
        self.elements[0].dim()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[HermitianOperator] {
        &self.elements
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Born probability of outcome `index` on a pure state.
    pub fn outcome_probability(&self, index: usize, state: &PureState) -> f64 {
        self.elements[index].expectation(state.amplitudes())
    }

    /// `max |sum of elements - identity|`; zero up to roundoff by
    /// construction, re-exposed for reports.
    pub fn completeness_residual(&self) -> f64 {
        let dim = self.dim();
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for element in &self.elements {
            sum = &sum + element.matrix();
        }
        sum.max_diff(&ComplexMatrix::identity(dim))
    }
}

/// Joint POVM for `n` identical program copies: the symmetric-subspace
/// projector on the `n + 1` qubits and its complement.
pub fn joint_povm_identical(n: usize) -> Result<Povm> {
    ProgramKind::Identical.program_qubits(n)?;
    let dim = 1usize << (n + 1);
    let plus = symmetric_projector(n + 1);
    let minus = HermitianOperator::identity(dim).linear_combination(1.0, &plus, -1.0);
    Povm::new(vec![plus, minus], vec!["par".to_string(), "perp".to_string()])
}

/// The two rank-1 states completing the symmetric-subspace half of the
/// orthogonal-program POVM. Amplitudes over (signal, program) qubits:
///
/// ```text
/// phi_1 = [(sqrt3+1)|001> - (sqrt3-1)|010> - 2|100>] / (2 sqrt3)
/// phi_2 = [(sqrt3+1)|110> - (sqrt3-1)|101> - 2|011>] / (2 sqrt3)
/// ```
pub fn orthogonal_povm_states() -> (PureState, PureState) {
    let sqrt3 = 3f64.sqrt();
    let norm = 1.0 / (2.0 * sqrt3);
    let re = |x: f64| Complex::new(x, 0.0);
    let zero = Complex::new(0.0, 0.0);

    let mut amp1 = vec![zero; 8];
    amp1[0b001] = re((sqrt3 + 1.0) * norm);
    amp1[0b010] = re(-(sqrt3 - 1.0) * norm);
    amp1[0b100] = re(-2.0 * norm);

    let mut amp2 = vec![zero; 8];
    amp2[0b110] = re((sqrt3 + 1.0) * norm);
    amp2[0b101] = re(-(sqrt3 - 1.0) * norm);
    amp2[0b011] = re(-2.0 * norm);

    // Normalization is asserted by the PureState constructor.
    (
        PureState::new(3, amp1).expect("phi_1 amplitudes are normalized"),
        PureState::new(3, amp2).expect("phi_2 amplitudes are normalized"),
    )
}

/// Joint three-qubit POVM for the orthogonal program `|psi>|psi_perp>`:
/// half the symmetric projector plus two rank-1 completions, and the
/// complement.
pub fn joint_povm_orthogonal() -> Result<Povm> {
    let (phi1, phi2) = orthogonal_povm_states();
    let sym_half = symmetric_projector(3).matrix().scale_re(0.5);
    let plus_matrix = &(&sym_half + &phi1.projector()) + &phi2.projector();
    let plus = HermitianOperator::new(plus_matrix)?;
    let minus = HermitianOperator::identity(8).linear_combination(1.0, &plus, -1.0);
    Povm::new(vec![plus, minus], vec!["par".to_string(), "perp".to_string()])
}

/// Effective POVM on the signal qubit for a fixed program state:
/// each joint element `E` maps to `Tr_p[(1_s ⊗ |prog><prog|) E]`.
pub fn effective_povm(joint: &Povm, program: &PureState) -> Result<Povm> {
    let program_dim = program.dim();
    if joint.dim() != 2 * program_dim {
        return Err(Error::DimensionMismatch {
            expected: 2 * program_dim,
            found: joint.dim(),
        });
    }
    let embed = ComplexMatrix::identity(2).tensor(&program.projector());
    let mut elements = Vec::with_capacity(joint.len());
    for element in joint.elements() {
        let product = &embed * element.matrix();
        let reduced = product.partial_trace(&[2, program_dim], &[0])?;
        elements.push(HermitianOperator::hermitized(&reduced)?);
    }
    Povm::new(elements, joint.labels().to_vec())
}

/// Closed-form effective POVM for `n` identical copies:
/// `par = 1/(n+1) + n/(n+1) |psi><psi|`, `perp = n/(n+1) |perp><perp|`.
pub fn effective_povm_identical_closed_form(n: usize, psi: &PureState) -> Result<Povm> {
    ProgramKind::Identical.program_qubits(n)?;
    let perp = orthogonal_state(psi)?;
    let nf = n as f64;
    let par = &ComplexMatrix::identity(2).scale_re(1.0 / (nf + 1.0))
        + &psi.projector().scale_re(nf / (nf + 1.0));
    let perp_el = perp.projector().scale_re(nf / (nf + 1.0));
    Povm::new(
        vec![HermitianOperator::new(par)?, HermitianOperator::new(perp_el)?],
        vec!["par".to_string(), "perp".to_string()],
    )
}

/// Closed-form effective POVM for the orthogonal program: both outcomes
/// share the coefficient pattern `(3-sqrt3)/6 * 1 + (sqrt3/3) |.><.|`.
pub fn effective_povm_orthogonal_closed_form(psi: &PureState) -> Result<Povm> {
    let perp = orthogonal_state(psi)?;
    let sqrt3 = 3f64.sqrt();
    let id_coeff = (3.0 - sqrt3) / 6.0;
    let proj_coeff = sqrt3 / 3.0;
    let par = &ComplexMatrix::identity(2).scale_re(id_coeff) + &psi.projector().scale_re(proj_coeff);
    let perp_el = &ComplexMatrix::identity(2).scale_re(id_coeff) + &perp.projector().scale_re(proj_coeff);
    Povm::new(
        vec![HermitianOperator::new(par)?, HermitianOperator::new(perp_el)?],
        vec!["par".to_string(), "perp".to_string()],
    )
}

/// Discrimination fidelities of a two-outcome single-qubit POVM:
/// `(⟨psi|E_par|psi⟩, ⟨psi_perp|E_perp|psi_perp⟩)`.
pub fn discrimination_fidelities(povm: &Povm, psi: &PureState) -> Result<(f64, f64)> {
    if povm.dim() != 2 || povm.len() != 2 {
        return Err(Error::InvalidSubsystems(
            "discrimination fidelities need a two-outcome single-qubit POVM".to_string(),
        ));
    }
    if psi.num_qubits() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: psi.dim(),
        });
    }
    let perp = orthogonal_state(psi)?;
    Ok((
        povm.outcome_probability(0, psi),
        povm.outcome_probability(1, &perp),
    ))
}

/// Optimal mean fidelity in closed form: `(2n+1)/(2n+2)` for `n`
/// identical copies, `(1 + 1/sqrt3)/2` for the orthogonal pair.
pub fn mean_fidelity_formula(kind: ProgramKind, n: usize) -> Result<f64> {
    kind.program_qubits(n)?;
    Ok(match kind {
        ProgramKind::Identical => (2.0 * n as f64 + 1.0) / (2.0 * n as f64 + 2.0),
        ProgramKind::Orthogonal => estimation_fidelity_orthogonal_pair(),
    })
}

/// Fidelity of optimal state estimation from a single copy of the
/// two-qubit register `|psi>|psi_perp>`: `(1 + 1/sqrt3)/2 ≈ 0.7886`.
/// The orthogonal-program multimeter attains exactly this value.
pub fn estimation_fidelity_orthogonal_pair() -> f64 {
    0.5 * (1.0 + 1.0 / 3f64.sqrt())
}

/// Fidelity of optimal state estimation from a single copy of two
/// identical qubits `|psi>|psi>`, and equally of the single-copy
/// (`n = 1`) multimeter: `3/4`.
pub const ESTIMATION_FIDELITY_IDENTICAL_PAIR: f64 = 0.75;
