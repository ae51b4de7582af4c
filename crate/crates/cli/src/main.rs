//! `qmm` — programmable-multimeter optimization from the command line.
//!
//! Exit codes: 0 success, 2 invalid configuration or data, 3 solver
//! non-convergence, 4 optimality-certificate failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qmm_cli::commands::{
    cmd_circuit, cmd_info, cmd_povm, cmd_solve, cmd_table, CircuitConfig, InfoConfig, InfoSource,
    PovmConfig, ProgramChoice, SolveConfig, TableConfig,
};
use qmm_cli::formats::{choi_to_json, iteration_log_csv, CircuitJson};
use qmm_cli::CliError;

const EXIT_CONFIG: u8 = 2;
const EXIT_NO_CONVERGENCE: u8 = 3;
const EXIT_CERTIFICATE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "qmm",
    version,
    about = "Programmable quantum multimeter: optimal maps, POVMs, information, and circuit checks",
    after_help = "Registers are big-endian (leftmost factor = most significant bit); the swap-test \
                  wire order is ancilla 0, signal 1, program 2. Reports print to stdout; --output or \
                  QMM_OUTPUT_DIR additionally writes them to disk."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProgramArg {
    /// n copies of the basis state
    Identical,
    /// the two-qubit register |psi>|psi_perp>
    Orthogonal,
}

impl ProgramArg {
    fn choice(self) -> ProgramChoice {
        match self {
            ProgramArg::Identical => ProgramChoice::Identical,
            ProgramArg::Orthogonal => ProgramChoice::Orthogonal,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
struct CommonArgs {
    /// RNG seed for randomized steps; echoed in the report header
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Report format (csv renders the iteration log for solve, the table
    /// for table, and flat key,value rows elsewhere)
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Also write the report to this path; defaults to
    /// $QMM_OUTPUT_DIR/<command>.<ext> when that variable is set
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Optimize the map for a program choice and certify global optimality
    Solve {
        #[arg(long, value_enum)]
        program: ProgramArg,
        /// Program copies (identical: default 1; orthogonal: fixed at 2)
        #[arg(long)]
        n: Option<usize>,
        /// Convergence threshold on the Frobenius step norm
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 10_000)]
        max_iters: usize,
        /// Write the optimized Choi matrix to this JSON file
        #[arg(long)]
        dump_choi: Option<PathBuf>,
        /// Write the iteration log to this CSV file
        #[arg(long)]
        dump_log: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Joint and effective POVMs with discrimination fidelities
    Povm {
        #[arg(long, value_enum)]
        program: ProgramArg,
        #[arg(long)]
        n: Option<usize>,
        /// Polar angle of the programmed basis state
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        /// Azimuth of the programmed basis state
        #[arg(long, default_value_t = 0.0)]
        phi: f64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Average information per bit, from a program choice or explicit fidelities
    Info {
        #[arg(long, value_enum, conflicts_with_all = ["f_par", "f_perp"])]
        program: Option<ProgramArg>,
        #[arg(long, requires = "program")]
        n: Option<usize>,
        #[arg(long, requires = "f_perp")]
        f_par: Option<f64>,
        #[arg(long, requires = "f_par")]
        f_perp: Option<f64>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Swap-test checks, optional shot sampling, fidelity sweep, or a circuit file
    Circuit {
        /// Random (signal, program) pairs compared against the closed form
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        /// Sample the ancilla this many times instead of exact readout only
        #[arg(long)]
        shots: Option<usize>,
        /// Average the circuit fidelity over uniformly sampled bases
        #[arg(long)]
        sweep_fidelity: bool,
        /// Sample count for the fidelity sweep
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        /// Load a circuit description (JSON gate records) and run it
        #[arg(long)]
        file: Option<PathBuf>,
        /// Computational basis input for the loaded circuit
        #[arg(long, default_value_t = 0)]
        input_index: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Fidelity and information table across program sizes
    Table {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Solve {
            program,
            n,
            tol,
            max_iters,
            dump_choi,
            dump_log,
            common,
        } => {
            let program = program.choice();
            let n = program.resolve_n(n)?;
            let result = cmd_solve(&SolveConfig {
                program,
                n,
                tol,
                max_iters,
                seed: common.seed,
            })?;
            if let Some(path) = dump_choi {
                write_file(&path, &serde_json::to_string_pretty(&choi_to_json(&result.outcome.chi))?)?;
            }
            if let Some(path) = dump_log {
                write_file(&path, &iteration_log_csv(&result.outcome.log))?;
            }
            let payload = match common.format {
                FormatArg::Json => to_json(&result.report)?,
                FormatArg::Csv => iteration_log_csv(&result.outcome.log),
            };
            emit("solve", &payload, &common)?;
            Ok(if !result.report.converged {
                ExitCode::from(EXIT_NO_CONVERGENCE)
            } else if !result.report.certificate.passed {
                ExitCode::from(EXIT_CERTIFICATE)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Povm {
            program,
            n,
            theta,
            phi,
            common,
        } => {
            let program = program.choice();
            let n = program.resolve_n(n)?;
            let report = cmd_povm(&PovmConfig {
                program,
                n,
                theta,
                phi,
                seed: common.seed,
            })?;
            let payload = match common.format {
                FormatArg::Json => to_json(&report)?,
                FormatArg::Csv => scalar_csv(&report)?,
            };
            emit("povm", &payload, &common)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Info {
            program,
            n,
            f_par,
            f_perp,
            common,
        } => {
            let source = match (program, f_par, f_perp) {
                (Some(program), None, None) => {
                    let program = program.choice();
                    let n = program.resolve_n(n)?;
                    InfoSource::Program { program, n }
                }
                (None, Some(f_par), Some(f_perp)) => InfoSource::Explicit { f_par, f_perp },
                _ => {
                    return Err(CliError::Config(
                        "provide either --program [--n] or both --f-par and --f-perp".to_string(),
                    ))
                }
            };
            let report = cmd_info(&InfoConfig {
                source,
                seed: common.seed,
            })?;
            let payload = match common.format {
                FormatArg::Json => to_json(&report)?,
                FormatArg::Csv => scalar_csv(&report)?,
            };
            emit("info", &payload, &common)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Circuit {
            pairs,
            shots,
            sweep_fidelity,
            samples,
            file,
            input_index,
            common,
        } => {
            if pairs == 0 {
                return Err(CliError::Config("--pairs must be at least 1".to_string()));
            }
            if sweep_fidelity && samples == 0 {
                return Err(CliError::Config("--samples must be at least 1".to_string()));
            }
            let circuit_file = match file {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)?;
                    let doc: CircuitJson = serde_json::from_str(&text)?;
                    Some((path.display().to_string(), doc))
                }
                None => None,
            };
            let report = cmd_circuit(&CircuitConfig {
                pairs,
                seed: common.seed,
                shots,
                sweep_fidelity,
                samples,
                circuit_file,
                input_index,
            })?;
            let payload = match common.format {
                FormatArg::Json => to_json(&report)?,
                FormatArg::Csv => scalar_csv(&report)?,
            };
            emit("circuit", &payload, &common)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { n_max, common } => {
            let report = cmd_table(&TableConfig {
                n_max,
                seed: common.seed,
            })?;
            let payload = match common.format {
                FormatArg::Json => to_json(&report)?,
                FormatArg::Csv => report.to_csv(),
            };
            emit("table", &payload, &common)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn to_json<T: serde::Serialize>(report: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(report)?)
}

/// Flat `key,value` CSV of the report's top-level scalar fields.
fn scalar_csv<T: serde::Serialize>(report: &T) -> Result<String, CliError> {
    let value = serde_json::to_value(report)?;
    let mut out = String::from("key,value\n");
    if let serde_json::Value::Object(map) = value {
        for (key, field) in map {
            match field {
                serde_json::Value::Null | serde_json::Value::Array(_) | serde_json::Value::Object(_) => {}
                scalar => out.push_str(&format!("{key},{scalar}\n")),
            }
        }
    }
    Ok(out)
}

/// Prints the payload and mirrors it to --output or $QMM_OUTPUT_DIR.
fn emit(command: &str, payload: &str, common: &CommonArgs) -> Result<(), CliError> {
    println!("{payload}");
    let target = match &common.output {
        Some(path) => Some(path.clone()),
        None => std::env::var_os("QMM_OUTPUT_DIR").map(|dir| {
            let ext = match common.format {
                FormatArg::Json => "json",
                FormatArg::Csv => "csv",
            };
            Path::new(&dir).join(format!("{command}.{ext}"))
        }),
    };
    if let Some(path) = target {
        write_file(&path, payload)?;
    }
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(path, contents)?;
    Ok(())
}
