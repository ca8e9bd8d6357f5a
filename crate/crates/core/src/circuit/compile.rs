//! Lowering of build plans to gates.

use std::f64::consts::PI;

use super::networks::{adder1_ops, diffusion_ops, formulas, selective_phase_ops, table_uf_ops};
use super::{BlockKind, GateCircuit, GateCount, GateOp, RegisterLayout};
use crate::error::{Direction, Error, Result};
use crate::plan::{Plan, Primitive};
use crate::target::ClassStructure;

/// Layout a plan over `structure` compiles to.
pub fn layout_for(structure: &ClassStructure) -> RegisterLayout {
    if structure.is_symmetric() {
        RegisterLayout::symmetric(structure.n())
    } else {
        RegisterLayout::general(structure.n(), structure.labels() - 1)
    }
}

type Net = (Vec<(usize, bool)>, f64);

fn pattern(layout: &RegisterLayout, value: usize) -> Vec<(usize, bool)> {
    (0..layout.m_sum())
        .map(|j| (layout.sum(j), value >> j & 1 == 1))
        .collect()
}

/// `(+ half, - half)` addressing of a label on the sum register (plus `X_1`
/// for the middle weight of an even register).
fn halves(
    structure: &ClassStructure,
    layout: &RegisterLayout,
    k: usize,
) -> [Vec<(usize, bool)>; 2] {
    let n = structure.n();
    if !structure.is_symmetric() {
        return [pattern(layout, 2 * k), pattern(layout, 2 * k + 1)];
    }
    if 2 * k == n {
        let mut plus = pattern(layout, k);
        let mut minus = plus.clone();
        plus.push((layout.main(0), false));
        minus.push((layout.main(0), true));
        [plus, minus]
    } else {
        [pattern(layout, k), pattern(layout, n - k)]
    }
}

fn phase_nets(structure: &ClassStructure, layout: &RegisterLayout, p: &Primitive) -> Vec<Net> {
    let mut nets = Vec::new();
    match p {
        Primitive::HalfPhase { labels, angle } => {
            for &k in labels {
                let [plus, minus] = halves(structure, layout, k);
                nets.push((plus, *angle));
                nets.push((minus, -angle));
            }
        }
        Primitive::ClassPhase { phases } => {
            for &(k, angle) in phases {
                if structure.is_symmetric() && 2 * k == structure.n() {
                    nets.push((pattern(layout, k), angle));
                } else {
                    let [plus, minus] = halves(structure, layout, k);
                    nets.push((plus, angle));
                    nets.push((minus, angle));
                }
            }
        }
        Primitive::Diffuse => {}
    }
    nets.retain(|(_, a)| *a != 0.0);
    nets
}

/// Gate circuit preparing the plan's target from `|0...0>`: H on every main
/// qubit, then per primitive either a diffusion network or a compute /
/// selective-phase / uncompute sandwich on the sum register.
pub fn compile_plan(plan: &Plan) -> Result<GateCircuit> {
    if plan.direction() != Direction::Build {
        return Err(Error::WrongDirection {
            expected: Direction::Build,
            found: plan.direction(),
        });
    }
    let structure = plan.structure();
    let layout = layout_for(structure);
    let n = structure.n();
    let mut circuit = GateCircuit::new(layout);

    let init = layout.main_qubits().into_iter().map(GateOp::H).collect();
    circuit.push_block(BlockKind::Init, init, n as u64, None)?;

    let (uf, uf_kind, uf_count, uf_formula) = if structure.is_symmetric() {
        let ops = adder1_ops(&layout);
        let count = formulas::adder1_with(n, layout.m_sum());
        (ops, BlockKind::Adder, count, Some(count))
    } else {
        let (ops, count) = table_uf_ops(&layout, structure)?;
        (ops, BlockKind::TableUf, count, None)
    };
    let uncompute: Vec<_> = uf.iter().rev().copied().collect();
    let uncompute_kind = match uf_kind {
        BlockKind::Adder => BlockKind::AdderUncompute,
        k => k,
    };

    for (i, step) in plan.steps().iter().enumerate() {
        let first = circuit.blocks().len();
        for p in step.primitives(plan.direction()) {
            if p == Primitive::Diffuse {
                let mut ops = Vec::new();
                diffusion_ops(&layout, &mut ops)?;
                circuit.push_block(
                    BlockKind::Diffusion,
                    ops,
                    formulas::diffusion_gates(n),
                    formulas::diffusion(n),
                )?;
                circuit.add_phase(PI);
                continue;
            }
            let nets = phase_nets(structure, &layout, &p);
            if nets.is_empty() {
                continue;
            }
            circuit.push_block(uf_kind, uf.clone(), uf_count, uf_formula)?;
            let mut ops = Vec::new();
            let mut expected = 0;
            for (conditions, angle) in &nets {
                expected += selective_phase_ops(&layout, conditions, *angle, &mut ops)?;
            }
            circuit.push_block(BlockKind::Phase, ops, expected, None)?;
            circuit.push_block(uncompute_kind, uncompute.clone(), uf_count, uf_formula)?;
        }
        circuit.tag_step(first, i);
    }
    Ok(circuit)
}

/// One line of the gate-count audit.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditRow {
    pub variant: &'static str,
    pub step: Option<usize>,
    pub count: u64,
    /// Count predicted by the construction's closed form.
    pub expected: u64,
    /// Stated closed form, where its size threshold applies.
    pub formula: Option<u64>,
}

impl AuditRow {
    pub fn matches(&self) -> bool {
        self.count == self.expected && self.formula.map_or(true, |f| f == self.count)
    }
}

impl GateCircuit {
    /// Per-block counts against their closed forms.
    pub fn audit(&self) -> Vec<AuditRow> {
        self.blocks()
            .iter()
            .map(|b| AuditRow {
                variant: b.kind.as_str(),
                step: b.step,
                count: GateCount::of(self.block_ops(b)).total(),
                expected: b.expected,
                formula: b.formula,
            })
            .collect()
    }

    /// Sum of the per-block closed forms.
    pub fn expected_total(&self) -> u64 {
        self.blocks().iter().map(|b| b.expected).sum()
    }
}
