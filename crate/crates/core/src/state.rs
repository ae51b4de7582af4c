//! Pure qubit states, Bloch-sphere parametrization, program registers,
//! and uniform Bloch-sphere sampling for Monte-Carlo averages.

use alloc::format;
use alloc::vec::Vec;

// Needed for float math in no_std builds; shadowed by inherent methods otherwise.
#[cfg_attr(feature = "std", allow(unused_imports))]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::{tol, Complex};

const PI: f64 = core::f64::consts::PI;

/// Point on the Bloch sphere: polar angle `theta` in `[0, pi]`,
/// azimuth `phi` in `[0, 2*pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochPoint {
    pub theta: f64,
    pub phi: f64,
}

impl BlochPoint {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) || !theta.is_finite() {
            return Err(Error::OutOfRange { name: "theta", value: theta });
        }
        if !(0.0..2.0 * PI).contains(&phi) || !phi.is_finite() {
            return Err(Error::OutOfRange { name: "phi", value: phi });
        }
        Ok(Self { theta, phi })
    }
}

/// Choice of program register for the multimeter.
///
/// `Identical` loads `n` copies of the basis state; `Orthogonal` loads the
/// two-qubit register `|psi>|psi_perp>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProgramKind {
    Identical,
    Orthogonal,
}

impl ProgramKind {
    /// Number of program qubits for the given copy count `n`; `Orthogonal`
    /// admits only `n = 2`.
    pub fn program_qubits(self, n: usize) -> Result<usize> {
        match self {
            ProgramKind::Identical => {
                if n == 0 {
                    Err(Error::InvalidProgram(format!(
                        "identical program needs at least one copy, got {n}"
                    )))
                } else {
                    Ok(n)
                }
            }
            ProgramKind::Orthogonal => {
                if n == 2 {
                    Ok(2)
                } else {
                    Err(Error::InvalidProgram(format!(
                        "orthogonal program is a two-qubit register, got n = {n}"
                    )))
                }
            }
        }
    }
}

/// Normalized pure state of a qubit register, big-endian amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    num_qubits: usize,
    amplitudes: Vec<Complex>,
}

impl PureState {
    pub fn new(num_qubits: usize, amplitudes: Vec<Complex>) -> Result<Self> {
        if amplitudes.len() != 1usize << num_qubits {
            return Err(Error::DimensionMismatch {
                expected: 1usize << num_qubits,
                found: amplitudes.len(),
            });
        }
        if !amplitudes.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > tol::NORMALIZATION {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { num_qubits, amplitudes })
    }

    /// Computational basis state `|index>`.
    pub fn basis(num_qubits: usize, index: usize) -> Self {
        let dim = 1usize << num_qubits;
        assert!(index < dim, "basis index out of range");
        let mut amplitudes = alloc::vec![Complex::new(0.0, 0.0); dim];
        amplitudes[index] = Complex::new(1.0, 0.0);
        Self { num_qubits, amplitudes }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amplitudes
    }

    /// Inner product `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex {
        debug_assert_eq!(self.dim(), other.dim());
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Rank-1 projector `|self><self|`.
    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim(), self.dim(), |i, j| {
            self.amplitudes[i] * self.amplitudes[j].conj()
        })
    }

    /// Tensor product; `self` occupies the most significant qubits.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        Self {
            num_qubits: self.num_qubits + other.num_qubits,
            amplitudes,
        }
    }

    /// n-fold tensor power.
    pub fn tensor_power(&self, n: usize) -> Self {
        assert!(n >= 1, "tensor power needs n >= 1");
        let mut out = self.clone();
        for _ in 1..n {
            out = out.tensor(self);
        }
        out
    }
}

/// State `cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>`; the global phase
/// sits entirely on the `|1>` amplitude.
pub fn bloch_state(p: BlochPoint) -> PureState {
    let half = p.theta / 2.0;
    let amplitudes = alloc::vec![
        Complex::new(half.cos(), 0.0),
        Complex::from_polar(half.sin(), p.phi),
    ];
    PureState {
        num_qubits: 1,
        amplitudes,
    }
}

/// Orthogonal companion of a single-qubit state, with the fixed phase
/// convention `(a, b) -> (-conj(b), conj(a))`.
pub fn orthogonal_state(psi: &PureState) -> Result<PureState> {
    if psi.num_qubits != 1 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: psi.dim(),
        });
    }
    let a = psi.amplitudes[0];
    let b = psi.amplitudes[1];
    Ok(PureState {
        num_qubits: 1,
        amplitudes: alloc::vec![-b.conj(), a.conj()],
    })
}

/// Composite (signal ⊗ program) inputs of the multimeter for basis state
/// `psi`: returns the pair driven by `psi` and by its orthogonal state.
///
/// The signal qubit is the most significant factor. For
/// [`ProgramKind::Identical`] the program register is `|psi>^(x n)`; for
/// [`ProgramKind::Orthogonal`] it is `|psi>|psi_perp>` (and `n` must be 2).
pub fn multimeter_input(psi: &PureState, program: ProgramKind, n: usize) -> Result<(PureState, PureState)> {
    if psi.num_qubits != 1 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: psi.dim(),
        });
    }
    program.program_qubits(n)?;
    let perp = orthogonal_state(psi)?;
    let register = match program {
        ProgramKind::Identical => psi.tensor_power(n),
        ProgramKind::Orthogonal => psi.tensor(&perp),
    };
    Ok((psi.tensor(&register), perp.tensor(&register)))
}

/// Deterministic stream of uniform Bloch-sphere points: `cos(theta)`
/// uniform on `[-1, 1]`, `phi` uniform on `[0, 2*pi)`. The seed fully
/// determines the sequence.
pub struct BlochSampler {
    rng: ChaCha8Rng,
}

impl BlochSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn next_point(&mut self) -> BlochPoint {
        let u: f64 = 2.0 * self.rng.gen::<f64>() - 1.0;
        let phi: f64 = 2.0 * PI * self.rng.gen::<f64>();
        BlochPoint {
            theta: u.clamp(-1.0, 1.0).acos(),
            phi: phi % (2.0 * PI),
        }
    }
}

impl Iterator for BlochSampler {
    type Item = BlochPoint;

    fn next(&mut self) -> Option<BlochPoint> {
        Some(self.next_point())
    }
}

/// Collects `count` uniform Bloch points from the seeded stream.
pub fn sample_bloch_uniform(seed: u64, count: usize) -> Vec<BlochPoint> {
    BlochSampler::new(seed).take(count).collect()
}
