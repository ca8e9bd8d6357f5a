use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symprep_cli::{
    audit_tsv, load, parse_spec, passes, plan_both, run_pipeline, simulate, spec, write_file,
    write_spec, CliError, DEFAULT_THRESHOLD,
};
use symprep_core::circuit::{compile_plan, GateCircuit};
use symprep_core::plan::write_trace;
use symprep_core::sim::DEFAULT_QUBIT_CAP;
use symprep_core::{read_plan, write_plan, SymmetricTarget, Target};

#[derive(Parser)]
#[command(
    name = "symprep",
    version,
    about = "Plan, compile and verify symmetric state-preparation circuits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the build plan for a target spec.
    Plan {
        spec: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the reduction plan.
        #[arg(long)]
        reduce_out: Option<PathBuf>,
        /// Write per-step class snapshots of the reduction.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Cap on amplification iterations per run.
        #[arg(long)]
        max_rpid: Option<u64>,
        #[arg(long)]
        normalize: bool,
    },
    /// Compile a build plan to a gate circuit.
    Compile {
        plan: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the per-block gate-count audit as TSV.
        #[arg(long)]
        audit: Option<PathBuf>,
    },
    /// Simulate a circuit and compare it with a target spec.
    Verify {
        spec: PathBuf,
        circuit: PathBuf,
        #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
        threshold: f64,
        #[arg(long, default_value_t = DEFAULT_QUBIT_CAP)]
        qubit_cap: usize,
        /// Write amplitudes with |a|^2 above 1e-12.
        #[arg(long)]
        dump_amps: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        normalize: bool,
    },
    /// Plan, compile and verify in one go.
    Run {
        spec: PathBuf,
        /// Directory for plan.txt, circuit.txt, audit.tsv and report.json.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long)]
        max_rpid: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
        threshold: f64,
        #[arg(long, default_value_t = DEFAULT_QUBIT_CAP)]
        qubit_cap: usize,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        normalize: bool,
    },
    /// Write a spec for a standard or random target.
    Gen {
        #[arg(value_enum)]
        kind: Kind,
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Ghz,
    Uniform,
    Random,
    Peaked,
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_file(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn load_spec(path: &Path, normalize: bool) -> Result<Target, CliError> {
    load(path, |text| parse_spec(text, normalize))
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Plan {
            spec,
            output,
            reduce_out,
            trace,
            max_rpid,
            normalize,
        } => {
            let target = load_spec(&spec, normalize)?;
            let (reduce, build) = plan_both(&target, max_rpid)?;
            if let Some(p) = reduce_out {
                write_file(&p, &write_plan(&reduce))?;
            }
            if let Some(p) = trace {
                write_file(&p, &write_trace(&reduce))?;
            }
            emit(output.as_deref(), &write_plan(&build))
        }
        Command::Compile {
            plan,
            output,
            audit,
        } => {
            let plan = load(&plan, read_plan)?;
            let circuit = compile_plan(&plan)?;
            if let Some(p) = audit {
                write_file(&p, &audit_tsv(&circuit))?;
            }
            emit(output.as_deref(), &circuit.to_text())
        }
        Command::Verify {
            spec,
            circuit,
            threshold,
            qubit_cap,
            dump_amps,
            json,
            normalize,
        } => {
            let target = load_spec(&spec, normalize)?;
            let circuit = load(&circuit, GateCircuit::from_text)?;
            let (state, report) = simulate(&circuit, &target, qubit_cap)?;
            if let Some(p) = dump_amps {
                write_file(&p, &state.dump(1e-12))?;
            }
            let ok = passes(&report, threshold);
            if json {
                let value = serde_json::json!({
                    "fidelity": report.fidelity,
                    "leakage": report.leakage,
                    "threshold": threshold,
                    "passed": ok,
                });
                println!("{value:#}");
            } else {
                println!(
                    "fidelity {:.15} leakage {:.3e} -> {}",
                    report.fidelity,
                    report.leakage,
                    if ok { "PASS" } else { "FAIL" }
                );
            }
            if ok {
                Ok(())
            } else {
                Err(CliError::Verification(format!(
                    "fidelity {:.15} / leakage {:.3e} against threshold {threshold}",
                    report.fidelity, report.leakage
                )))
            }
        }
        Command::Run {
            spec,
            out_dir,
            max_rpid,
            threshold,
            qubit_cap,
            json,
            normalize,
        } => {
            let target = load_spec(&spec, normalize)?;
            let (plan, circuit, report) = run_pipeline(&target, max_rpid, qubit_cap, threshold)?;
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(&dir).map_err(|source| CliError::Io {
                    path: dir.clone(),
                    source,
                })?;
                write_file(&dir.join("plan.txt"), &write_plan(&plan))?;
                write_file(&dir.join("circuit.txt"), &circuit.to_text())?;
                write_file(&dir.join("audit.tsv"), &audit_tsv(&circuit))?;
                write_file(&dir.join("report.json"), &report.to_json())?;
            }
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.summary());
            }
            if report.passed && report.audit_ok {
                Ok(())
            } else {
                Err(CliError::Verification(format!(
                    "fidelity {:.15}, audit {}",
                    report.fidelity,
                    if report.audit_ok { "ok" } else { "mismatch" }
                )))
            }
        }
        Command::Gen {
            kind,
            n,
            seed,
            output,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let target: Target = match kind {
                Kind::Ghz => SymmetricTarget::ghz(n)?.into(),
                Kind::Uniform => SymmetricTarget::uniform(n)?.into(),
                Kind::Random => spec::spread_target(n, &mut rng)?,
                Kind::Peaked => spec::peaked_target(n, &mut rng)?,
            };
            emit(output.as_deref(), &write_spec(&target))
        }
    }
}
