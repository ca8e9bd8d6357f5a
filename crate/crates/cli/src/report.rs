use std::time::Duration;

use serde::Serialize;
use sha2::{Digest, Sha256};
use symprep_core::circuit::{GateCircuit, GateCount};
use symprep_core::sim::FidelityReport;
use symprep_core::{Plan, PlanStep, Target};

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub n: usize,
    pub mode: &'static str,
    /// SHA-256 of the target's coefficient bits and class table.
    pub target_digest: String,
    pub plan: PlanSummary,
    pub qubits: usize,
    pub gates: GateTally,
    pub expected_gates: u64,
    pub audit_ok: bool,
    pub fidelity: f64,
    pub leakage: f64,
    pub threshold: f64,
    pub passed: bool,
    pub timing: Timing,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct PlanSummary {
    pub steps: usize,
    pub rdr_merges: usize,
    pub rpid_steps: usize,
    pub pi_flips: usize,
    pub class_phases: usize,
    pub longest_rpid_run: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct GateTally {
    pub h: u64,
    pub x: u64,
    pub rz: u64,
    pub cnot: u64,
    pub toffoli: u64,
    pub total: u64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Timing {
    pub plan_ms: f64,
    pub compile_ms: f64,
    pub simulate_ms: f64,
}

impl RunReport {
    pub fn new(
        target: &Target,
        plan: &Plan,
        circuit: &GateCircuit,
        fidelity: FidelityReport,
        threshold: f64,
    ) -> Self {
        let audit_ok = circuit.audit().iter().all(|r| r.matches())
            && circuit.gate_count().total() == circuit.expected_total();
        RunReport {
            n: target.n(),
            mode: if target.structure().is_symmetric() {
                "symmetric"
            } else {
                "general"
            },
            target_digest: digest(target),
            plan: PlanSummary::of(plan),
            qubits: circuit.layout().total(),
            gates: GateTally::from(circuit.gate_count()),
            expected_gates: circuit.expected_total(),
            audit_ok,
            fidelity: fidelity.fidelity,
            leakage: fidelity.leakage,
            threshold,
            passed: crate::passes(&fidelity, threshold),
            timing: Timing::default(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Short human-readable form.
    pub fn summary(&self) -> String {
        let p = &self.plan;
        format!(
            "target  {} ({} qubits, {})\n\
             plan    {} steps: {} merges, {} amplification (longest run {}), {} pi-flips\n\
             circuit {} qubits, {} gates (H {} X {} RZ {} CNOT {} TOFFOLI {}), audit {}\n\
             verify  fidelity {:.15} leakage {:.3e} -> {}\n",
            &self.target_digest[..16],
            self.n,
            self.mode,
            p.steps,
            p.rdr_merges,
            p.rpid_steps,
            p.longest_rpid_run,
            p.pi_flips,
            self.qubits,
            self.gates.total,
            self.gates.h,
            self.gates.x,
            self.gates.rz,
            self.gates.cnot,
            self.gates.toffoli,
            if self.audit_ok { "ok" } else { "MISMATCH" },
            self.fidelity,
            self.leakage,
            if self.passed { "PASS" } else { "FAIL" },
        )
    }
}

impl PlanSummary {
    pub fn of(plan: &Plan) -> Self {
        let mut s = PlanSummary {
            steps: plan.steps().len(),
            rdr_merges: plan.rdr_merges(),
            rpid_steps: plan.rpid_steps(),
            longest_rpid_run: plan.rpid_runs().into_iter().max().unwrap_or(0),
            ..Default::default()
        };
        for step in plan.steps() {
            match step {
                PlanStep::PiFlip { .. } => s.pi_flips += 1,
                PlanStep::ClassPhases { .. } => s.class_phases += 1,
                _ => {}
            }
        }
        s
    }
}

impl From<GateCount> for GateTally {
    fn from(c: GateCount) -> Self {
        GateTally {
            h: c.h,
            x: c.x,
            rz: c.rz,
            cnot: c.cnot,
            toffoli: c.toffoli,
            total: c.total(),
        }
    }
}

pub fn digest(target: &Target) -> String {
    let mut h = Sha256::new();
    h.update((target.n() as u64).to_le_bytes());
    if let Some(table) = target.structure().table() {
        for (k, half) in table {
            h.update(k.to_le_bytes());
            h.update([*half as u8]);
        }
    }
    for c in target.coeffs() {
        h.update(c.re.to_bits().to_le_bytes());
        h.update(c.im.to_bits().to_le_bytes());
    }
    format!("{:x}", h.finalize())
}

pub(crate) fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}
