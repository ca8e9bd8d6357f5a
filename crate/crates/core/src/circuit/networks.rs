//! The elementary-gate networks: ripple-carry adders, multi-controlled X and
//! `R_z`, selective phase shifts through the kickback qubit, and inversion
//! about average.

use super::{BlockKind, GateCircuit, GateOp, RegisterLayout};
use crate::error::{Error, Result};
use crate::target::ClassStructure;

/// Closed-form gate counts: the stated formulas and the exact counts of the
/// constructions in this module for every size.
pub mod formulas {
    /// `n (3m - 2)` with `m = ceil(log2(n+1))`.
    pub fn adder1(n: usize) -> u64 {
        adder1_with(n, super::super::RegisterLayout::symmetric(n).m_sum())
    }

    pub fn adder1_with(n: usize, m: usize) -> u64 {
        (n * (3 * m - 2)) as u64
    }

    /// `8(2n - 7)`, stated for `n >= 6` controls.
    pub fn lambda_rz(n: usize) -> Option<u64> {
        (n >= 6).then(|| 8 * (2 * n as u64 - 7))
    }

    /// `2(9m - 28)`, stated for `m >= 6`.
    pub fn selective_phase(m: usize) -> Option<u64> {
        (m >= 6).then(|| 2 * (9 * m as u64 - 28))
    }

    /// `4(5n - 14)`, stated for `n >= 6`.
    pub fn diffusion(n: usize) -> Option<u64> {
        (n >= 6).then(|| 4 * (5 * n as u64 - 14))
    }

    /// Toffoli ladder on `m` controls with `m - 2` borrowed qubits.
    fn ladder(m: usize) -> u64 {
        if m <= 2 {
            1
        } else {
            4 * (m as u64 - 2)
        }
    }

    /// Gates in [`mcx`](super::mcx) with `k` controls.
    pub fn mcx_gates(k: usize) -> u64 {
        if k <= 2 {
            return 1;
        }
        let m1 = k.div_ceil(2);
        2 * ladder(m1) + 2 * ladder(k - m1 + 1)
    }

    /// Gates in [`lambda_n_rz`](super::lambda_n_rz) with `c` controls.
    pub fn lambda_rz_gates(c: usize) -> u64 {
        match c {
            0 => 1,
            1 => 4,
            _ => 8 + 2 * mcx_gates(c - 1),
        }
    }

    /// One selective phase on `controls` qubits, `zeros` of them matched
    /// against 0.
    pub fn selective_phase_gates(controls: usize, zeros: usize) -> u64 {
        2 * zeros as u64 + lambda_rz_gates(controls)
    }

    pub fn diffusion_gates(n: usize) -> u64 {
        4 * n as u64 + lambda_rz_gates(n)
    }
}

fn check_distinct(qubits: &[usize], layout: &RegisterLayout) -> Result<()> {
    for (i, &q) in qubits.iter().enumerate() {
        if q >= layout.total() {
            return Err(Error::IndexOutOfRange {
                index: q,
                qubits: layout.total(),
            });
        }
        if qubits[..i].contains(&q) {
            return Err(Error::RepeatedQubit(q));
        }
    }
    Ok(())
}

fn single(
    kind: BlockKind,
    layout: &RegisterLayout,
    ops: Vec<GateOp>,
    expected: u64,
    formula: Option<u64>,
) -> Result<GateCircuit> {
    let mut c = GateCircuit::new(*layout);
    c.push_block(kind, ops, expected, formula)?;
    Ok(c)
}

/// H on `X_1`, then CNOT from `X_1` to every other main qubit.
pub fn build_ghz(n: usize) -> Result<GateCircuit> {
    if n < 2 {
        return Err(Error::TooFewQubits(n));
    }
    let layout = RegisterLayout::bare(n);
    let mut ops = vec![GateOp::H(0)];
    ops.extend((1..n).map(|k| GateOp::CNot(0, k)));
    single(BlockKind::Ghz, &layout, ops, n as u64, Some(n as u64))
}

fn adder2_ops(layout: &RegisterLayout, xk: usize, ops: &mut Vec<GateOp>) {
    let m = layout.m_sum();
    let s = |j| layout.sum(j);
    let c = |j| layout.carry(j);
    if m == 1 {
        ops.push(GateOp::CNot(xk, s(0)));
        return;
    }
    ops.push(GateOp::Toffoli(s(0), xk, c(1)));
    for j in 2..m {
        ops.push(GateOp::Toffoli(c(j - 1), s(j - 1), c(j)));
    }
    for j in (2..m).rev() {
        ops.push(GateOp::CNot(c(j), s(j)));
        ops.push(GateOp::Toffoli(c(j - 1), s(j - 1), c(j)));
    }
    ops.push(GateOp::CNot(c(1), s(1)));
    ops.push(GateOp::Toffoli(s(0), xk, c(1)));
    ops.push(GateOp::CNot(xk, s(0)));
}

/// `S <- S + X_k mod 2^m` with carries returned to zero: `2(m-1)` Toffoli
/// and `m` CNOT gates.
pub fn adder2(layout: &RegisterLayout, x_index: usize) -> Result<GateCircuit> {
    if x_index >= layout.n_main() {
        return Err(Error::IndexOutOfRange {
            index: x_index,
            qubits: layout.n_main(),
        });
    }
    check_sum_register(layout)?;
    let mut ops = Vec::new();
    adder2_ops(layout, x_index, &mut ops);
    let m = layout.m_sum() as u64;
    single(BlockKind::Adder, layout, ops, 3 * m - 2, Some(3 * m - 2))
}

fn check_sum_register(layout: &RegisterLayout) -> Result<()> {
    if layout.m_sum() == 0 || layout.n_carry() + 1 < layout.m_sum() {
        return Err(Error::LayoutMismatch(format!(
            "adder needs a sum register and m-1 carries, layout is '{layout}'"
        )));
    }
    Ok(())
}

pub(crate) fn adder1_ops(layout: &RegisterLayout) -> Vec<GateOp> {
    let mut ops = Vec::new();
    for k in 0..layout.n_main() {
        adder2_ops(layout, k, &mut ops);
    }
    ops
}

/// `|x>|0> -> |x>|popcount(x)>` as `n` adder-2 networks.
pub fn adder1_uf(layout: &RegisterLayout) -> Result<GateCircuit> {
    check_sum_register(layout)?;
    let count = formulas::adder1_with(layout.n_main(), layout.m_sum());
    single(
        BlockKind::Adder,
        layout,
        adder1_ops(layout),
        count,
        Some(count),
    )
}

/// `|x>|0> -> |x>|2k + [half = -]>` for an explicit class table, one
/// pattern-matched multi-controlled X per set code bit. Self-inverse.
pub fn table_uf(layout: &RegisterLayout, structure: &ClassStructure) -> Result<GateCircuit> {
    let (ops, expected) = table_uf_ops(layout, structure)?;
    single(BlockKind::TableUf, layout, ops, expected, None)
}

pub(crate) fn table_uf_ops(
    layout: &RegisterLayout,
    structure: &ClassStructure,
) -> Result<(Vec<GateOp>, u64)> {
    let n = layout.n_main();
    if structure.n() != n {
        return Err(Error::LayoutMismatch(format!(
            "structure has {} qubits, layout has {n} main qubits",
            structure.n()
        )));
    }
    let max_code = 2 * (structure.labels() - 1) + 1;
    if layout.m_sum() == 0 || max_code >> layout.m_sum() != 0 {
        return Err(Error::LayoutMismatch(format!(
            "sum register of {} qubits cannot hold code {max_code}",
            layout.m_sum()
        )));
    }
    let main = layout.main_qubits();
    let spare = layout.kickback();
    let mut ops = Vec::new();
    let mut expected = 0;
    for x in 0..structure.dim() {
        let (label, half) = structure.locate(x);
        let code = 2 * label + usize::from(half == crate::target::Half::Minus);
        if code == 0 {
            continue;
        }
        let zeros: Vec<_> = main.iter().copied().filter(|&q| x >> q & 1 == 0).collect();
        ops.extend(zeros.iter().map(|&q| GateOp::X(q)));
        for j in 0..layout.m_sum() {
            if code >> j & 1 == 1 {
                mcx_ops(&main, layout.sum(j), Some(spare), &mut ops)?;
                expected += formulas::mcx_gates(n);
            }
        }
        ops.extend(zeros.iter().map(|&q| GateOp::X(q)));
        expected += 2 * zeros.len() as u64;
    }
    Ok((ops, expected))
}

/// Toffoli ladder for `controls.len() >= 3` with borrowed qubits in any
/// state, restored afterwards.
fn ladder_ops(controls: &[usize], target: usize, borrowed: &[usize], ops: &mut Vec<GateOp>) {
    let m = controls.len();
    match m {
        0 => ops.push(GateOp::X(target)),
        1 => ops.push(GateOp::CNot(controls[0], target)),
        2 => ops.push(GateOp::Toffoli(controls[0], controls[1], target)),
        _ => {
            let a = &borrowed[..m - 2];
            let gate = |i: usize| {
                let out = if i == m - 1 { target } else { a[i - 1] };
                GateOp::Toffoli(controls[i], a[i - 2], out)
            };
            let base = GateOp::Toffoli(controls[0], controls[1], a[0]);
            ops.extend((2..m).rev().map(gate));
            ops.push(base);
            ops.extend((2..m).map(gate));
            ops.extend((2..m - 1).rev().map(gate));
            ops.push(base);
            ops.extend((2..m - 1).map(gate));
        }
    }
}

pub(crate) fn mcx_ops(
    controls: &[usize],
    target: usize,
    spare: Option<usize>,
    ops: &mut Vec<GateOp>,
) -> Result<()> {
    let k = controls.len();
    if k <= 2 {
        ladder_ops(controls, target, &[], ops);
        return Ok(());
    }
    let spare = spare.ok_or(Error::NoIdleQubit { controls: k })?;
    let (g1, g2) = controls.split_at(k.div_ceil(2));
    let mut b1: Vec<_> = g2.to_vec();
    b1.push(target);
    let mut c2 = g2.to_vec();
    c2.push(spare);
    for _ in 0..2 {
        ladder_ops(g1, spare, &b1, ops);
        ladder_ops(&c2, target, g1, ops);
    }
    Ok(())
}

/// `Lambda_k(sigma_x)`: flips `target` when every control is 1. Three or more
/// controls borrow `spare`, which may be in any state and is restored.
pub fn mcx(
    layout: &RegisterLayout,
    controls: &[usize],
    target: usize,
    spare: Option<usize>,
) -> Result<GateCircuit> {
    let mut all = controls.to_vec();
    all.push(target);
    all.extend(spare);
    check_distinct(&all, layout)?;
    let mut ops = Vec::new();
    mcx_ops(controls, target, spare, &mut ops)?;
    let k = controls.len();
    let formula = (k >= 5).then(|| 8 * (k as u64 - 3));
    single(BlockKind::Mcx, layout, ops, formulas::mcx_gates(k), formula)
}

fn controlled_rz1(control: usize, target: usize, beta: f64, ops: &mut Vec<GateOp>) {
    ops.push(GateOp::Rz(target, beta / 2.0));
    ops.push(GateOp::CNot(control, target));
    ops.push(GateOp::Rz(target, -beta / 2.0));
    ops.push(GateOp::CNot(control, target));
}

pub(crate) fn lambda_rz_ops(
    controls: &[usize],
    target: usize,
    alpha: f64,
    ops: &mut Vec<GateOp>,
) -> Result<()> {
    match controls {
        [] => ops.push(GateOp::Rz(target, alpha)),
        [c] => controlled_rz1(*c, target, alpha, ops),
        [rest @ .., last] => {
            controlled_rz1(*last, target, alpha / 2.0, ops);
            mcx_ops(rest, target, Some(*last), ops)?;
            controlled_rz1(*last, target, -alpha / 2.0, ops);
            mcx_ops(rest, target, Some(*last), ops)?;
        }
    }
    Ok(())
}

/// `Lambda_n(R_z(alpha))`. The last control doubles as the borrowed qubit of
/// the inner multi-controlled X, so no qubit outside the gate is touched.
pub fn lambda_n_rz(
    layout: &RegisterLayout,
    controls: &[usize],
    target: usize,
    alpha: f64,
) -> Result<GateCircuit> {
    let mut all = controls.to_vec();
    all.push(target);
    check_distinct(&all, layout)?;
    let mut ops = Vec::new();
    lambda_rz_ops(controls, target, alpha, &mut ops)?;
    let c = controls.len();
    single(
        BlockKind::ControlledRz,
        layout,
        ops,
        formulas::lambda_rz_gates(c),
        formulas::lambda_rz(c),
    )
}

/// Phase `e^{i theta}` on basis states where each `(qubit, bit)` condition
/// holds: X on the qubits matched against 0, then `Lambda(R_z(2 theta))` onto
/// the kickback qubit held in `|0>`, then X again.
pub(crate) fn selective_phase_ops(
    layout: &RegisterLayout,
    conditions: &[(usize, bool)],
    theta: f64,
    ops: &mut Vec<GateOp>,
) -> Result<u64> {
    let zeros: Vec<_> = conditions.iter().filter(|c| !c.1).map(|c| c.0).collect();
    let controls: Vec<_> = conditions.iter().map(|c| c.0).collect();
    ops.extend(zeros.iter().map(|&q| GateOp::X(q)));
    lambda_rz_ops(&controls, layout.kickback(), 2.0 * theta, ops)?;
    ops.extend(zeros.iter().map(|&q| GateOp::X(q)));
    Ok(formulas::selective_phase_gates(controls.len(), zeros.len()))
}

/// Selective phase on an arbitrary conjunction of qubit values.
pub fn selective_phase_on(
    layout: &RegisterLayout,
    conditions: &[(usize, bool)],
    theta: f64,
) -> Result<GateCircuit> {
    let mut qs: Vec<_> = conditions.iter().map(|c| c.0).collect();
    qs.push(layout.kickback());
    check_distinct(&qs, layout)?;
    let mut ops = Vec::new();
    let expected = selective_phase_ops(layout, conditions, theta, &mut ops)?;
    let all_zero = conditions.iter().all(|c| !c.1);
    let formula = if all_zero {
        formulas::selective_phase(conditions.len())
    } else {
        None
    };
    single(BlockKind::Phase, layout, ops, expected, formula)
}

/// Phase `e^{i theta}` on the sum-register value `pattern`; bit `j` of
/// `pattern` is matched against `S_j`.
pub fn selective_phase(layout: &RegisterLayout, pattern: u64, theta: f64) -> Result<GateCircuit> {
    let m = layout.m_sum();
    if m < 64 && pattern >> m != 0 {
        return Err(Error::PreconditionViolated(format!(
            "pattern {pattern} does not fit a {m}-qubit sum register"
        )));
    }
    let conditions: Vec<_> = (0..m)
        .map(|j| (layout.sum(j), pattern >> j & 1 == 1))
        .collect();
    selective_phase_on(layout, &conditions, theta)
}

pub(crate) fn diffusion_ops(layout: &RegisterLayout, ops: &mut Vec<GateOp>) -> Result<()> {
    let main = layout.main_qubits();
    ops.extend(main.iter().map(|&q| GateOp::H(q)));
    ops.extend(main.iter().map(|&q| GateOp::X(q)));
    lambda_rz_ops(&main, layout.kickback(), 2.0 * std::f64::consts::PI, ops)?;
    ops.extend(main.iter().map(|&q| GateOp::X(q)));
    ops.extend(main.iter().map(|&q| GateOp::H(q)));
    Ok(())
}

/// `-W R W` on the main register, `R` being a pi shift on `|0...0>` through
/// the kickback qubit. The gates realize `-D`; the circuit's global phase
/// carries the missing sign.
pub fn grover_d_network(layout: &RegisterLayout) -> Result<GateCircuit> {
    if layout.n_main() < 2 {
        return Err(Error::TooFewQubits(layout.n_main()));
    }
    let mut ops = Vec::new();
    diffusion_ops(layout, &mut ops)?;
    let n = layout.n_main();
    let mut c = single(
        BlockKind::Diffusion,
        layout,
        ops,
        formulas::diffusion_gates(n),
        formulas::diffusion(n),
    )?;
    c.add_phase(std::f64::consts::PI);
    Ok(c)
}
