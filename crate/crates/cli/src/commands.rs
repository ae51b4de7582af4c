//! Command implementations behind the CLI: each takes a validated config
//! and returns a serializable report.

use qmm_core::circuit::{
    sample_outcome_counts, standard_probes, swap_test_outcome_probs, tomographic_povm,
};
use qmm_core::fidelity::build_r_analytic;
use qmm_core::info::info_from_fidelities;
use qmm_core::multimeter::{
    discrimination_fidelities, effective_povm, joint_povm_identical, joint_povm_orthogonal,
    mean_fidelity_formula, Povm,
};
use qmm_core::solver::{solve, SolveOutcome, SolverConfig};
use qmm_core::state::{
    bloch_state, orthogonal_state, sample_bloch_uniform, BlochPoint, ProgramKind, PureState,
};

use crate::formats::{circuit_from_json, povm_to_json, CircuitJson};
use crate::report::*;
use crate::CliError;

/// Program selection as it appears on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProgramChoice {
    Identical,
    Orthogonal,
}

impl ProgramChoice {
    pub fn kind(self) -> ProgramKind {
        match self {
            ProgramChoice::Identical => ProgramKind::Identical,
            ProgramChoice::Orthogonal => ProgramKind::Orthogonal,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ProgramChoice::Identical => "identical",
            ProgramChoice::Orthogonal => "orthogonal",
        }
    }

    /// Resolves the program-copy argument: identical defaults to one
    /// copy, orthogonal is pinned to its two-qubit register.
    pub fn resolve_n(self, n: Option<usize>) -> Result<usize, CliError> {
        let n = n.unwrap_or(match self {
            ProgramChoice::Identical => 1,
            ProgramChoice::Orthogonal => 2,
        });
        self.kind().program_qubits(n)?;
        Ok(n)
    }
}

pub struct SolveConfig {
    pub program: ProgramChoice,
    pub n: usize,
    pub tol: f64,
    pub max_iters: usize,
    pub seed: u64,
}

pub struct SolveResult {
    pub report: SolveReport,
    pub outcome: SolveOutcome,
}

pub fn cmd_solve(cfg: &SolveConfig) -> Result<SolveResult, CliError> {
    let kind = cfg.program.kind();
    let solver_cfg = SolverConfig {
        max_iters: cfg.max_iters,
        convergence_tol: cfg.tol,
        ..SolverConfig::default()
    };
    let r = build_r_analytic(kind, cfg.n)?;
    let outcome = solve(&r, &solver_cfg, None)?;
    let closed_form_fidelity = mean_fidelity_formula(kind, cfg.n)?;
    let fidelity = outcome.certificate.fidelity;
    let report = SolveReport {
        command: "solve".to_string(),
        seed: cfg.seed,
        program: cfg.program.name().to_string(),
        n: cfg.n,
        fidelity,
        closed_form_fidelity,
        abs_difference: (fidelity - closed_form_fidelity).abs(),
        iterations: outcome.iterations,
        converged: outcome.converged,
        certificate: CertificateReport {
            fidelity: outcome.certificate.fidelity,
            stationarity_residual: outcome.certificate.stationarity_residual,
            dual_min_eigenvalue: outcome.certificate.dual_min_eigenvalue,
            passed: outcome.certificate.passed,
        },
    };
    Ok(SolveResult { report, outcome })
}

pub struct PovmConfig {
    pub program: ProgramChoice,
    pub n: usize,
    pub theta: f64,
    pub phi: f64,
    pub seed: u64,
}

pub fn cmd_povm(cfg: &PovmConfig) -> Result<PovmReport, CliError> {
    let psi = bloch_state(BlochPoint::new(cfg.theta, cfg.phi)?);
    let (joint, program_state) = match cfg.program {
        ProgramChoice::Identical => (joint_povm_identical(cfg.n)?, psi.tensor_power(cfg.n)),
        ProgramChoice::Orthogonal => (
            joint_povm_orthogonal()?,
            psi.tensor(&orthogonal_state(&psi)?),
        ),
    };
    let effective = effective_povm(&joint, &program_state)?;
    let (f_par, f_perp) = discrimination_fidelities(&effective, &psi)?;

    // Decompose the "par" element over {1, |psi><psi|}.
    let perp = orthogonal_state(&psi)?;
    let identity = effective.elements()[0].expectation(perp.amplitudes());
    let signal_projector = effective.elements()[0].expectation(psi.amplitudes()) - identity;

    Ok(PovmReport {
        command: "povm".to_string(),
        seed: cfg.seed,
        program: cfg.program.name().to_string(),
        n: cfg.n,
        theta: cfg.theta,
        phi: cfg.phi,
        completeness_residual: joint
            .completeness_residual()
            .max(effective.completeness_residual()),
        joint_povm: povm_to_json(&joint),
        effective_povm: povm_to_json(&effective),
        f_par,
        f_perp,
        coefficients: EffectiveCoefficients {
            identity,
            signal_projector,
        },
    })
}

pub enum InfoSource {
    Program { program: ProgramChoice, n: usize },
    Explicit { f_par: f64, f_perp: f64 },
}

pub struct InfoConfig {
    pub source: InfoSource,
    pub seed: u64,
}

pub fn cmd_info(cfg: &InfoConfig) -> Result<InfoReportDoc, CliError> {
    let (f_par, f_perp, source, program, n) = match &cfg.source {
        InfoSource::Program { program, n } => {
            // Fidelities of the effective POVM; program-independent, so
            // any basis state works.
            let psi = PureState::basis(1, 0);
            let povm = effective_for(program.kind(), *n, &psi)?;
            let (f_par, f_perp) = discrimination_fidelities(&povm, &psi)?;
            (
                f_par,
                f_perp,
                "program",
                Some(program.name().to_string()),
                Some(*n),
            )
        }
        InfoSource::Explicit { f_par, f_perp } => (*f_par, *f_perp, "explicit", None, None),
    };
    let info = info_from_fidelities(f_par, f_perp)?;
    Ok(InfoReportDoc {
        command: "info".to_string(),
        seed: cfg.seed,
        source: source.to_string(),
        program,
        n,
        f_par: info.f_par,
        f_perp: info.f_perp,
        r_par: info.r_par,
        r_perp: info.r_perp,
        p_par: info.p_par,
        p_perp: info.p_perp,
        info_bits: info.info_bits,
    })
}

fn effective_for(kind: ProgramKind, n: usize, psi: &PureState) -> Result<Povm, CliError> {
    let (joint, program_state) = match kind {
        ProgramKind::Identical => (joint_povm_identical(n)?, psi.tensor_power(n)),
        ProgramKind::Orthogonal => {
            kind.program_qubits(n)?;
            (joint_povm_orthogonal()?, psi.tensor(&orthogonal_state(psi)?))
        }
    };
    Ok(effective_povm(&joint, &program_state)?)
}

pub struct CircuitConfig {
    pub pairs: usize,
    pub seed: u64,
    pub shots: Option<usize>,
    pub sweep_fidelity: bool,
    pub samples: usize,
    pub circuit_file: Option<(String, CircuitJson)>,
    pub input_index: usize,
}

pub fn cmd_circuit(cfg: &CircuitConfig) -> Result<CircuitReport, CliError> {
    // Circuit vs closed-form Born probabilities on seeded random pairs.
    let mut points = sample_bloch_uniform(cfg.seed, 2 * cfg.pairs).into_iter();
    let mut max_deviation: f64 = 0.0;
    for _ in 0..cfg.pairs {
        let signal = bloch_state(points.next().expect("sampler yields enough points"));
        let program = bloch_state(points.next().expect("sampler yields enough points"));
        let (p0, _) = swap_test_outcome_probs(&signal, &program)?;
        let povm = qmm_core::multimeter::effective_povm_identical_closed_form(1, &program)?;
        let born = povm.outcome_probability(0, &signal);
        max_deviation = max_deviation.max((p0 - born).abs());
    }

    // Tomographic reconstruction against the partial-trace reduction.
    let program = bloch_state(BlochPoint::new(1.0, 0.5)?);
    let reconstructed = tomographic_povm(
        |probe| {
            swap_test_outcome_probs(probe, &program)
                .expect("single-qubit probes")
                .0
        },
        &standard_probes(),
    )?;
    let reduced = effective_povm(&joint_povm_identical(1)?, &program)?;
    let tomography_residual = reconstructed.elements()[0]
        .matrix()
        .max_diff(reduced.elements()[0].matrix())
        .max(
            reconstructed.elements()[1]
                .matrix()
                .max_diff(reduced.elements()[1].matrix()),
        );

    let shots = match cfg.shots {
        Some(shots) if shots > 0 => {
            let signal = bloch_state(BlochPoint::new(0.8, 4.0)?);
            let prog = bloch_state(BlochPoint::new(2.0, 1.0)?);
            let (p0, _) = swap_test_outcome_probs(&signal, &prog)?;
            let zeros = sample_outcome_counts(p0, shots, cfg.seed);
            let p0_empirical = zeros as f64 / shots as f64;
            let sigma = (p0 * (1.0 - p0) / shots as f64).sqrt();
            Some(ShotsReport {
                shots,
                p0_exact: p0,
                p0_empirical,
                within_bound: (p0_empirical - p0).abs() <= 5.0 * sigma,
            })
        }
        Some(_) => {
            return Err(CliError::Config("--shots must be positive".to_string()));
        }
        None => None,
    };

    let fidelity_sweep = if cfg.sweep_fidelity {
        let mut sum = 0.0;
        for point in sample_bloch_uniform(cfg.seed.wrapping_add(1), cfg.samples) {
            let psi = bloch_state(point);
            let perp = orthogonal_state(&psi)?;
            let (p_par, _) = swap_test_outcome_probs(&psi, &psi)?;
            let (_, p_perp) = swap_test_outcome_probs(&perp, &psi)?;
            sum += 0.5 * (p_par + p_perp);
        }
        Some(SweepReport {
            samples: cfg.samples,
            mean_fidelity: sum / cfg.samples as f64,
        })
    } else {
        None
    };

    let loaded_circuit = match &cfg.circuit_file {
        Some((name, doc)) => {
            let circuit = circuit_from_json(doc)?;
            let dim = 1usize << circuit.num_qubits();
            if cfg.input_index >= dim {
                return Err(CliError::Config(format!(
                    "input index {} out of range for {} qubits",
                    cfg.input_index,
                    circuit.num_qubits()
                )));
            }
            let output = circuit.run(&PureState::basis(circuit.num_qubits(), cfg.input_index))?;
            Some(LoadedCircuitReport {
                file: name.clone(),
                num_qubits: circuit.num_qubits(),
                gates: circuit.gates().len(),
                input_index: cfg.input_index,
                output_amplitudes: output.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
            })
        }
        None => None,
    };

    Ok(CircuitReport {
        command: "circuit".to_string(),
        seed: cfg.seed,
        pairs: cfg.pairs,
        max_probability_deviation: max_deviation,
        tomography_residual,
        shots,
        fidelity_sweep,
        loaded_circuit,
    })
}

pub struct TableConfig {
    pub n_max: usize,
    pub seed: u64,
}

pub fn cmd_table(cfg: &TableConfig) -> Result<TableReport, CliError> {
    if cfg.n_max == 0 {
        return Err(CliError::Config("--n-max must be at least 1".to_string()));
    }
    let mut rows = Vec::with_capacity(cfg.n_max + 1);
    for n in 1..=cfg.n_max {
        let nf = n as f64;
        let f_par = 1.0;
        let f_perp = nf / (nf + 1.0);
        rows.push(TableRow {
            program: "identical".to_string(),
            n,
            fidelity: mean_fidelity_formula(ProgramKind::Identical, n)?,
            f_par,
            f_perp,
            info_bits: info_from_fidelities(f_par, f_perp)?.info_bits,
        });
    }
    let f_orth = mean_fidelity_formula(ProgramKind::Orthogonal, 2)?;
    rows.push(TableRow {
        program: "orthogonal".to_string(),
        n: 2,
        fidelity: f_orth,
        f_par: f_orth,
        f_perp: f_orth,
        info_bits: info_from_fidelities(f_orth, f_orth)?.info_bits,
    });
    let symmetric = info_from_fidelities(0.75, 0.75)?;
    Ok(TableReport {
        command: "table".to_string(),
        seed: cfg.seed,
        rows,
        symmetrized_reference: SymmetrizedReference {
            f_par: symmetric.f_par,
            f_perp: symmetric.f_perp,
            info_bits: symmetric.info_bits,
        },
    })
}
