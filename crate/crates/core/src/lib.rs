//! Programmable quantum multimeters: measurement devices whose projective
//! basis is selected by the state of a quantum program register.
//!
//! The crate optimizes and analyzes such devices for a single signal qubit:
//!
//! - [`matrix`] / [`eig`] — dense complex-matrix algebra: tensor products,
//!   partial traces, Hermitian eigendecomposition.
//! - [`state`] — Bloch-sphere states, program registers, uniform sampling.
//! - [`symmetric`] — permutation operators and symmetric-subspace projectors.
//! - [`fidelity`] — the mean-fidelity figure-of-merit operator, built in
//!   closed form and by Bloch-sphere quadrature or Monte-Carlo averaging.
//! - [`choi`] — Choi-matrix representation of trace-preserving CP maps.
//! - [`solver`] — fixed-point maximization of the mean fidelity with a
//!   global-optimality certificate from the extremal equations.
//! - [`multimeter`] — closed-form joint and effective POVMs and fidelities.
//! - [`info`] — average information extracted per transmitted bit.
//! - [`circuit`] — gate-level swap-test simulator and POVM tomography.
//!
//! All qubit registers use big-endian ordering: the leftmost tensor factor
//! is the most significant bit of the basis index. Choi matrices order the
//! bipartite space as (input ⊗ output).
//!
//! The crate is `no_std`-compatible (requires `alloc`); the default `std`
//! feature only enables `std::error::Error` for [`Error`].

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod choi;
pub mod circuit;
pub mod eig;
pub mod error;
pub mod fidelity;
pub mod info;
pub mod matrix;
pub mod multimeter;
pub mod solver;
pub mod state;
pub mod symmetric;
pub mod tol;

pub use choi::ChoiMatrix;
pub use circuit::{Gate, GateCircuit};
pub use eig::{EigDecomposition, HermitianOperator};
pub use error::{Error, Result};
pub use fidelity::FidelityOperator;
pub use info::InfoReport;
pub use matrix::ComplexMatrix;
pub use multimeter::Povm;
pub use solver::{IterationRecord, OptimalityCertificate, SolverConfig};
pub use state::{BlochPoint, ProgramKind, PureState};

/// Complex scalar used throughout: double-precision pair.
pub type Complex = num_complex::Complex64;
