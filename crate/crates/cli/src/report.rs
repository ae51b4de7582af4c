//! Machine-readable reports emitted by the CLI commands.
//!
//! Field order is fixed by the struct definitions, numeric fields are
//! full-precision doubles, and every report opens with the command name
//! and the seed in effect, so a fixed config reproduces byte-identical
//! output.

use serde::{Deserialize, Serialize};

use crate::formats::PovmJson;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateReport {
    pub fidelity: f64,
    pub stationarity_residual: f64,
    pub dual_min_eigenvalue: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveReport {
    pub command: String,
    pub seed: u64,
    pub program: String,
    pub n: usize,
    pub fidelity: f64,
    pub closed_form_fidelity: f64,
    pub abs_difference: f64,
    pub iterations: usize,
    pub converged: bool,
    pub certificate: CertificateReport,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EffectiveCoefficients {
    /// Weight of the identity in the "par" element.
    pub identity: f64,
    /// Weight of the signal projector in the "par" element.
    pub signal_projector: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PovmReport {
    pub command: String,
    pub seed: u64,
    pub program: String,
    pub n: usize,
    pub theta: f64,
    pub phi: f64,
    pub joint_povm: PovmJson,
    pub effective_povm: PovmJson,
    pub f_par: f64,
    pub f_perp: f64,
    pub completeness_residual: f64,
    pub coefficients: EffectiveCoefficients,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InfoReportDoc {
    pub command: String,
    pub seed: u64,
    /// `"program"` when derived from a program choice, `"explicit"` when
    /// the fidelities were given directly.
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub program: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub f_par: f64,
    pub f_perp: f64,
    pub r_par: f64,
    pub r_perp: f64,
    pub p_par: f64,
    pub p_perp: f64,
    pub info_bits: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ShotsReport {
    pub shots: usize,
    pub p0_exact: f64,
    pub p0_empirical: f64,
    /// Empirical frequency within five binomial standard deviations.
    pub within_bound: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepReport {
    pub samples: usize,
    pub mean_fidelity: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LoadedCircuitReport {
    pub file: String,
    pub num_qubits: usize,
    pub gates: usize,
    pub input_index: usize,
    /// Output amplitudes as `[re, im]` pairs.
    pub output_amplitudes: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CircuitReport {
    pub command: String,
    pub seed: u64,
    pub pairs: usize,
    /// Largest |circuit - closed form| outcome-probability deviation.
    pub max_probability_deviation: f64,
    /// Largest entrywise gap between the tomographic POVM and the
    /// partial-trace reduction.
    pub tomography_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shots: Option<ShotsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fidelity_sweep: Option<SweepReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub loaded_circuit: Option<LoadedCircuitReport>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableRow {
    pub program: String,
    pub n: usize,
    pub fidelity: f64,
    pub f_par: f64,
    pub f_perp: f64,
    pub info_bits: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymmetrizedReference {
    pub f_par: f64,
    pub f_perp: f64,
    pub info_bits: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableReport {
    pub command: String,
    pub seed: u64,
    pub rows: Vec<TableRow>,
    /// Reference measurement with both fidelities at the single-copy mean:
    /// same average fidelity, strictly less information.
    pub symmetrized_reference: SymmetrizedReference,
}

impl TableReport {
    /// CSV rendering: one line per row, the reference appended with the
    /// `symmetrized` pseudo-program.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("program,n,fidelity,f_par,f_perp,info_bits\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                row.program, row.n, row.fidelity, row.f_par, row.f_perp, row.info_bits
            ));
        }
        let sym = &self.symmetrized_reference;
        out.push_str(&format!(
            "symmetrized,1,{},{},{},{}\n",
            (sym.f_par + sym.f_perp) / 2.0,
            sym.f_par,
            sym.f_perp,
            sym.info_bits
        ));
        out
    }
}
