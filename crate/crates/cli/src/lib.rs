//! Library half of the `symprep` command: spec files, the end-to-end
//! pipeline and its report.

pub mod report;
pub mod spec;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use symprep_core::circuit::{compile_plan, GateCircuit};
use symprep_core::sim::{FidelityReport, Statevector};
use symprep_core::{plan_reduce, reverse_plan, Error, Plan, Target};

pub use report::RunReport;
pub use spec::{parse_spec, write_spec};

pub const DEFAULT_THRESHOLD: f64 = 1.0 - 1e-8;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    File { path: PathBuf, source: Error },

    #[error(transparent)]
    Core(#[from] Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    /// 1 for a failed check, 3 for a resource limit, 2 for bad input.
    pub fn exit_code(&self) -> u8 {
        let core = match self {
            CliError::Verification(_) => return 1,
            CliError::Io { .. } => return 2,
            CliError::File { source, .. } | CliError::Core(source) => source,
        };
        match core {
            Error::IterationBudgetExceeded { .. }
            | Error::QubitCapExceeded { .. }
            | Error::TooManyQubits(_) => 3,
            _ => 2,
        }
    }
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

/// Reads a file and runs `parse` on it, tagging errors with the path.
pub fn load<T>(
    path: &Path,
    parse: impl FnOnce(&str) -> symprep_core::Result<T>,
) -> Result<T, CliError> {
    let text = read_file(path)?;
    parse(&text).map_err(|source| CliError::File {
        path: path.to_owned(),
        source,
    })
}

/// Reduction plan and the build plan derived from it.
pub fn plan_both(target: &Target, max_rpid: Option<u64>) -> symprep_core::Result<(Plan, Plan)> {
    let reduce = plan_reduce(target, max_rpid)?;
    let build = reverse_plan(&reduce);
    Ok((reduce, build))
}

/// Simulates `circuit` from `|0..0>` and compares the main register with
/// `target`.
pub fn simulate(
    circuit: &GateCircuit,
    target: &Target,
    cap: usize,
) -> symprep_core::Result<(Statevector, FidelityReport)> {
    let layout = circuit.layout();
    if layout.n_main() != target.n() {
        return Err(Error::LayoutMismatch(format!(
            "circuit has {} main qubits, target has {}",
            layout.n_main(),
            target.n()
        )));
    }
    let mut state = Statevector::zero_with_cap(layout.total(), cap)?;
    state.run_circuit(circuit)?;
    let report = state.fidelity(&target.amplitudes());
    Ok((state, report))
}

pub fn passes(report: &FidelityReport, threshold: f64) -> bool {
    report.fidelity >= threshold && report.leakage <= 1.0 - threshold
}

/// Tab-separated audit: one row per block, then a total.
pub fn audit_tsv(circuit: &GateCircuit) -> String {
    let mut out = String::from("variant\tstep\tcount\texpected\tformula\tmatch\n");
    for row in circuit.audit() {
        let step = row.step.map_or("-".to_string(), |s| s.to_string());
        let formula = row.formula.map_or("-".to_string(), |f| f.to_string());
        writeln!(
            out,
            "{}\t{step}\t{}\t{}\t{formula}\t{}",
            row.variant,
            row.count,
            row.expected,
            if row.matches() { "ok" } else { "MISMATCH" }
        )
        .unwrap();
    }
    let total = circuit.gate_count().total();
    let expected = circuit.expected_total();
    let ok = if total == expected { "ok" } else { "MISMATCH" };
    writeln!(out, "total\t-\t{total}\t{expected}\t-\t{ok}").unwrap();
    out
}

/// Plans, compiles and simulates `target`, returning the compiled circuit
/// alongside the report.
pub fn run_pipeline(
    target: &Target,
    max_rpid: Option<u64>,
    cap: usize,
    threshold: f64,
) -> symprep_core::Result<(Plan, GateCircuit, RunReport)> {
    let clock = std::time::Instant::now();
    let (_, build) = plan_both(target, max_rpid)?;
    let plan_ms = report::millis(clock.elapsed());

    let clock = std::time::Instant::now();
    let circuit = compile_plan(&build)?;
    let compile_ms = report::millis(clock.elapsed());

    let clock = std::time::Instant::now();
    let (_, fidelity) = simulate(&circuit, target, cap)?;
    let simulate_ms = report::millis(clock.elapsed());

    let mut report = RunReport::new(target, &build, &circuit, fidelity, threshold);
    report.timing = report::Timing {
        plan_ms,
        compile_ms,
        simulate_ms,
    };
    Ok((build, circuit, report))
}
