//! Pure-state gate simulator for the swap-test multimeter and
//! least-squares tomography of its effective signal POVM.
//!
//! Wire order for the swap test: qubit 0 is the ancilla (the Fredkin
//! control and the measured qubit), qubit 1 the signal, qubit 2 the
//! program. Ancilla outcome 0 is identified with the "par" outcome of the
//! effective POVM; outcome probabilities are computed exactly from the
//! final amplitudes, with an optional seeded shot sampler on top.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

// Needed for float math in no_std builds; shadowed by inherent methods otherwise.
#[cfg_attr(feature = "std", allow(unused_imports))]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eig::HermitianOperator;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::multimeter::Povm;
use crate::state::PureState;
use crate::{tol, Complex};

/// Elementary gate of the simulator.
#[derive(Debug, Clone)]
pub enum Gate {
    Hadamard { target: usize },
    /// Controlled swap of the two targets.
    Fredkin { control: usize, targets: (usize, usize) },
    /// Generic single-qubit unitary (validated at insertion).
    Unitary { target: usize, matrix: ComplexMatrix },
}

/// Ordered list of gates on a fixed-width register.
#[derive(Debug, Clone)]
pub struct GateCircuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl GateCircuit {
    pub fn new(num_qubits: usize) -> Self {
        Self {
            num_qubits,
            gates: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Appends a gate after validating its wiring (and unitarity for
    /// generic gates).
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        match &gate {
            Gate::Hadamard { target } => self.check_wire(*target)?,
            Gate::Fredkin { control, targets } => {
                self.check_wire(*control)?;
                self.check_wire(targets.0)?;
                self.check_wire(targets.1)?;
                if *control == targets.0 || *control == targets.1 || targets.0 == targets.1 {
                    return Err(Error::InvalidCircuit(format!(
                        "Fredkin wires must be distinct, got control {control} targets {targets:?}"
                    )));
                }
            }
            Gate::Unitary { target, matrix } => {
                self.check_wire(*target)?;
                if matrix.rows() != 2 || matrix.cols() != 2 {
                    return Err(Error::InvalidCircuit("single-qubit unitary must be 2x2".to_string()));
                }
                let gram = &matrix.adjoint() * matrix;
                let deviation = gram.max_diff(&ComplexMatrix::identity(2));
                if deviation > tol::HERMITICITY {
                    return Err(Error::InvalidCircuit(format!(
                        "gate matrix is not unitary (|U^dag U - 1| = {deviation:e})"
                    )));
                }
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    fn check_wire(&self, wire: usize) -> Result<()> {
        if wire >= self.num_qubits {
            Err(Error::InvalidCircuit(format!(
                "wire {wire} out of range for {} qubits",
                self.num_qubits
            )))
        } else {
            Ok(())
        }
    }

    /// Runs the circuit on `input`; unitarity keeps the output normalized.
    pub fn run(&self, input: &PureState) -> Result<PureState> {
        if input.num_qubits() != self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: 1 << self.num_qubits,
                found: input.dim(),
            });
        }
        let mut amps = input.amplitudes().to_vec();
        for gate in &self.gates {
            match gate {
                Gate::Hadamard { target } => {
                    let h = 1.0 / 2f64.sqrt();
                    apply_single_qubit(&mut amps, self.num_qubits, *target, |a0, a1| {
                        ((a0 + a1) * h, (a0 - a1) * h)
                    });
                }
                Gate::Unitary { target, matrix } => {
                    let (u00, u01) = (matrix.get(0, 0), matrix.get(0, 1));
                    let (u10, u11) = (matrix.get(1, 0), matrix.get(1, 1));
                    apply_single_qubit(&mut amps, self.num_qubits, *target, |a0, a1| {
                        (u00 * a0 + u01 * a1, u10 * a0 + u11 * a1)
                    });
                }
                Gate::Fredkin { control, targets } => {
                    apply_fredkin(&mut amps, self.num_qubits, *control, targets.0, targets.1);
                }
            }
        }
        PureState::new(self.num_qubits, amps)
    }
}

fn bit_shift(num_qubits: usize, wire: usize) -> usize {
    num_qubits - 1 - wire
}

fn apply_single_qubit(
    amps: &mut [Complex],
    num_qubits: usize,
    target: usize,
    update: impl Fn(Complex, Complex) -> (Complex, Complex),
) {
    let mask = 1usize << bit_shift(num_qubits, target);
    for index in 0..amps.len() {
        if index & mask == 0 {
            let pair = index | mask;
            let (a0, a1) = (amps[index], amps[pair]);
            let (b0, b1) = update(a0, a1);
            amps[index] = b0;
            amps[pair] = b1;
        }
    }
}

fn apply_fredkin(amps: &mut [Complex], num_qubits: usize, control: usize, t0: usize, t1: usize) {
    let control_mask = 1usize << bit_shift(num_qubits, control);
    let mask0 = 1usize << bit_shift(num_qubits, t0);
    let mask1 = 1usize << bit_shift(num_qubits, t1);
    for index in 0..amps.len() {
        // Act once per pair: pick the representative with t0 = 1, t1 = 0.
        if index & control_mask != 0 && index & mask0 != 0 && index & mask1 == 0 {
            let swapped = (index & !mask0) | mask1;
            amps.swap(index, swapped);
        }
    }
}

/// Probability that `wire` reads 0 in the computational basis.
pub fn qubit_zero_probability(state: &PureState, wire: usize) -> f64 {
    let mask = 1usize << bit_shift(state.num_qubits(), wire);
    state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(index, _)| index & mask == 0)
        .map(|(_, amp)| amp.norm_sqr())
        .sum()
}

/// The three-qubit swap-test circuit: Hadamard on the ancilla, Fredkin on
/// (signal, program) controlled by the ancilla, Hadamard again.
pub fn swap_test_circuit() -> GateCircuit {
    let mut circuit = GateCircuit::new(3);
    circuit.push(Gate::Hadamard { target: 0 }).expect("valid wiring");
    circuit
        .push(Gate::Fredkin {
            control: 0,
            targets: (1, 2),
        })
        .expect("valid wiring");
    circuit.push(Gate::Hadamard { target: 0 }).expect("valid wiring");
    circuit
}

/// Runs the swap test and returns the ancilla outcome probabilities
/// `(p0, p1)`; `p0 = (1 + |<signal|program>|^2) / 2`.
pub fn swap_test_outcome_probs(signal: &PureState, program: &PureState) -> Result<(f64, f64)> {
    if signal.num_qubits() != 1 || program.num_qubits() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: signal.dim().max(program.dim()),
        });
    }
    let input = PureState::basis(1, 0).tensor(signal).tensor(program);
    let output = swap_test_circuit().run(&input)?;
    let p0 = qubit_zero_probability(&output, 0);
    Ok((p0, 1.0 - p0))
}

/// Draws `shots` Bernoulli samples of the ancilla and returns the count
/// of 0 outcomes; deterministic in the seed.
pub fn sample_outcome_counts(p0: f64, shots: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..shots).filter(|_| rng.gen::<f64>() < p0).count()
}

/// Informationally complete probe set `{|0>, |1>, |+>, |+i>}`.
pub fn standard_probes() -> Vec<PureState> {
    let h = 1.0 / 2f64.sqrt();
    vec![
        PureState::basis(1, 0),
        PureState::basis(1, 1),
        PureState::new(1, vec![Complex::new(h, 0.0), Complex::new(h, 0.0)]).expect("normalized"),
        PureState::new(1, vec![Complex::new(h, 0.0), Complex::new(0.0, h)]).expect("normalized"),
    ]
}

/// Reconstructs the two-outcome signal POVM of a measurement procedure
/// from its outcome-0 probabilities on informationally complete probes.
///
/// The element is expanded in the Hermitian basis `{1, X, Y, Z}` and the
/// coefficients solved from the probe Gram system in the least-squares
/// (normal-equation) sense; a rank-deficient probe set is rejected.
pub fn tomographic_povm(mut outcome_zero_prob: impl FnMut(&PureState) -> f64, probes: &[PureState]) -> Result<Povm> {
    if probes.len() < 4 {
        return Err(Error::InvalidSubsystems(format!(
            "tomography needs at least 4 probes, got {}",
            probes.len()
        )));
    }
    if probes.iter().any(|p| p.num_qubits() != 1) {
        return Err(Error::DimensionMismatch { expected: 2, found: 0 });
    }

    let basis = hermitian_basis();
    let m = probes.len();
    // Design matrix g[k][a] = <probe_k| B_a |probe_k>.
    let mut design = vec![[0.0f64; 4]; m];
    let mut probs = vec![0.0f64; m];
    for (k, probe) in probes.iter().enumerate() {
        for (a, b) in basis.iter().enumerate() {
            design[k][a] = b.expectation(probe.amplitudes());
        }
        probs[k] = outcome_zero_prob(probe);
    }

    // Normal equations G^T G x = G^T p over the real coefficients.
    let mut gram = ComplexMatrix::zeros(4, 4);
    let mut rhs = [Complex::new(0.0, 0.0); 4];
    for a in 0..4 {
        for b in 0..4 {
            let mut sum = 0.0;
            for row in &design {
                sum += row[a] * row[b];
            }
            gram.set(a, b, Complex::new(sum, 0.0));
        }
        rhs[a] = Complex::new(design.iter().zip(&probs).map(|(row, p)| row[a] * p).sum(), 0.0);
    }
    let coeffs = gram.solve(&rhs)?;

    let mut element = ComplexMatrix::zeros(2, 2);
    for (a, b) in basis.iter().enumerate() {
        element = &element + &b.matrix().scale(coeffs[a]);
    }
    let par = HermitianOperator::hermitized(&element)?;
    let perp = HermitianOperator::identity(2).linear_combination(1.0, &par, -1.0);
    Povm::new(vec![par, perp], vec!["par".to_string(), "perp".to_string()])
}

fn hermitian_basis() -> [HermitianOperator; 4] {
    let c = Complex::new;
    let make = |entries: [Complex; 4]| {
        HermitianOperator::new(ComplexMatrix::new(2, 2, entries.to_vec()).expect("finite entries"))
            .expect("Pauli basis is Hermitian")
    };
    [
        HermitianOperator::identity(2),
        make([c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]),
        make([c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]),
        make([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]),
    ]
}
