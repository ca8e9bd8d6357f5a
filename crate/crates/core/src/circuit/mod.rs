//! Elementary-gate circuits over an explicit register layout.

mod compile;
mod networks;
mod text;

use std::fmt;

pub use compile::{compile_plan, layout_for, AuditRow};
pub use networks::{
    adder1_uf, adder2, build_ghz, formulas, grover_d_network, lambda_n_rz, mcx, selective_phase,
    selective_phase_on, table_uf,
};

use crate::error::{Error, Result};

/// Qubit order: main `X_1..X_n`, sum `S_0..S_{m-1}`, carry `C_1..C_{m-1}`,
/// then the kickback qubit. `X_1` is bit 0 of a basis index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegisterLayout {
    n_main: usize,
    m_sum: usize,
    n_carry: usize,
    kickback: bool,
}

fn bits_for(v: usize) -> usize {
    (usize::BITS - v.leading_zeros()) as usize
}

impl RegisterLayout {
    /// Sum register wide enough for a Hamming weight, `m = ceil(log2(n+1))`.
    pub fn symmetric(n: usize) -> Self {
        let m = bits_for(n);
        RegisterLayout {
            n_main: n,
            m_sum: m,
            n_carry: m.saturating_sub(1),
            kickback: true,
        }
    }

    /// Sum register holding the code `2k + [half = -]` for labels up to
    /// `max_label`, `m = ceil(log2(M+1)) + 1`.
    pub fn general(n: usize, max_label: usize) -> Self {
        let m = bits_for(max_label) + 1;
        RegisterLayout {
            n_main: n,
            m_sum: m,
            n_carry: m - 1,
            kickback: true,
        }
    }

    /// Main register plus the kickback qubit.
    pub fn bare(n: usize) -> Self {
        RegisterLayout {
            n_main: n,
            m_sum: 0,
            n_carry: 0,
            kickback: true,
        }
    }

    pub fn custom(n_main: usize, m_sum: usize, n_carry: usize, kickback: bool) -> Self {
        RegisterLayout {
            n_main,
            m_sum,
            n_carry,
            kickback,
        }
    }

    pub fn n_main(&self) -> usize {
        self.n_main
    }

    pub fn m_sum(&self) -> usize {
        self.m_sum
    }

    pub fn n_carry(&self) -> usize {
        self.n_carry
    }

    pub fn has_kickback(&self) -> bool {
        self.kickback
    }

    pub fn total(&self) -> usize {
        self.n_main + self.m_sum + self.n_carry + usize::from(self.kickback)
    }

    pub fn main(&self, i: usize) -> usize {
        assert!(i < self.n_main, "main qubit {i} out of range");
        i
    }

    pub fn main_qubits(&self) -> Vec<usize> {
        (0..self.n_main).collect()
    }

    pub fn sum(&self, j: usize) -> usize {
        assert!(j < self.m_sum, "sum qubit {j} out of range");
        self.n_main + j
    }

    pub fn sum_qubits(&self) -> Vec<usize> {
        (0..self.m_sum).map(|j| self.sum(j)).collect()
    }

    /// `C_j`, `j >= 1`.
    pub fn carry(&self, j: usize) -> usize {
        assert!(j >= 1 && j <= self.n_carry, "carry C_{j} out of range");
        self.n_main + self.m_sum + j - 1
    }

    pub fn kickback(&self) -> usize {
        assert!(self.kickback, "layout has no kickback qubit");
        self.total() - 1
    }

    /// Mask of every qubit outside the main register.
    pub fn ancilla_mask(&self) -> u64 {
        let all = u64::MAX >> (64 - self.total().min(64));
        all & !((1u64 << self.n_main) - 1)
    }
}

impl fmt::Display for RegisterLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "qubits {} main={} sum={} carry={} kickback={}",
            self.total(),
            self.n_main,
            self.m_sum,
            self.n_carry,
            u8::from(self.kickback)
        )
    }
}

/// `Rz(a) = diag(e^{ia/2}, e^{-ia/2})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateOp {
    H(usize),
    X(usize),
    Rz(usize, f64),
    CNot(usize, usize),
    Toffoli(usize, usize, usize),
}

impl GateOp {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            GateOp::H(q) | GateOp::X(q) | GateOp::Rz(q, _) => vec![q],
            GateOp::CNot(c, t) => vec![c, t],
            GateOp::Toffoli(a, b, t) => vec![a, b, t],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GateOp::H(_) => "H",
            GateOp::X(_) => "X",
            GateOp::Rz(..) => "RZ",
            GateOp::CNot(..) => "CNOT",
            GateOp::Toffoli(..) => "TOFFOLI",
        }
    }

    /// Index range and distinctness check.
    pub fn validate(&self, qubits: usize) -> Result<()> {
        let qs = self.qubits();
        for (i, &q) in qs.iter().enumerate() {
            if q >= qubits {
                return Err(Error::IndexOutOfRange { index: q, qubits });
            }
            if qs[..i].contains(&q) {
                return Err(Error::RepeatedQubit(q));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GateCount {
    pub h: u64,
    pub x: u64,
    pub rz: u64,
    pub cnot: u64,
    pub toffoli: u64,
}

impl GateCount {
    pub fn of(ops: &[GateOp]) -> Self {
        let mut c = GateCount::default();
        for op in ops {
            match op {
                GateOp::H(_) => c.h += 1,
                GateOp::X(_) => c.x += 1,
                GateOp::Rz(..) => c.rz += 1,
                GateOp::CNot(..) => c.cnot += 1,
                GateOp::Toffoli(..) => c.toffoli += 1,
            }
        }
        c
    }

    pub fn single_qubit(&self) -> u64 {
        self.h + self.x + self.rz
    }

    pub fn total(&self) -> u64 {
        self.single_qubit() + self.cnot + self.toffoli
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    Init,
    Ghz,
    Adder,
    AdderUncompute,
    TableUf,
    Phase,
    Diffusion,
    Mcx,
    ControlledRz,
}

impl BlockKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BlockKind::Init => "init",
            BlockKind::Ghz => "ghz",
            BlockKind::Adder => "adder1",
            BlockKind::AdderUncompute => "adder1-inverse",
            BlockKind::TableUf => "table-uf",
            BlockKind::Phase => "phase",
            BlockKind::Diffusion => "diffusion",
            BlockKind::Mcx => "mcx",
            BlockKind::ControlledRz => "controlled-rz",
        }
    }
}

/// A contiguous run of ops produced by one network.
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub kind: BlockKind,
    pub start: usize,
    pub len: usize,
    /// Gate count predicted by the closed form of the construction.
    pub expected: u64,
    /// Count stated for this network in closed form, where one applies.
    pub formula: Option<u64>,
    /// Plan step the block belongs to.
    pub step: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GateCircuit {
    layout: RegisterLayout,
    ops: Vec<GateOp>,
    global_phase: f64,
    blocks: Vec<Block>,
}

impl GateCircuit {
    pub fn new(layout: RegisterLayout) -> Self {
        GateCircuit {
            layout,
            ops: Vec::new(),
            global_phase: 0.0,
            blocks: Vec::new(),
        }
    }

    /// Unchecked assembly from parts; used by the text reader.
    pub fn from_ops(layout: RegisterLayout, ops: Vec<GateOp>, global_phase: f64) -> Result<Self> {
        for op in &ops {
            op.validate(layout.total())?;
        }
        Ok(GateCircuit {
            layout,
            ops,
            global_phase,
            blocks: Vec::new(),
        })
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn ops_mut(&mut self) -> &mut [GateOp] {
        &mut self.ops
    }

    pub fn global_phase(&self) -> f64 {
        self.global_phase
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn gate_count(&self) -> GateCount {
        GateCount::of(&self.ops)
    }

    pub fn block_ops(&self, block: &Block) -> &[GateOp] {
        &self.ops[block.start..block.start + block.len]
    }

    pub(crate) fn push_block(
        &mut self,
        kind: BlockKind,
        ops: Vec<GateOp>,
        expected: u64,
        formula: Option<u64>,
    ) -> Result<()> {
        for op in &ops {
            op.validate(self.layout.total())?;
        }
        self.blocks.push(Block {
            kind,
            start: self.ops.len(),
            len: ops.len(),
            expected,
            formula,
            step: None,
        });
        self.ops.extend(ops);
        Ok(())
    }

    pub(crate) fn add_phase(&mut self, angle: f64) {
        self.global_phase = (self.global_phase + angle).rem_euclid(2.0 * std::f64::consts::PI);
    }

    /// Appends `other`, which must share this layout.
    pub fn append(&mut self, other: GateCircuit) -> Result<()> {
        if other.layout != self.layout {
            return Err(Error::LayoutMismatch(format!(
                "cannot append a circuit on '{}' to one on '{}'",
                other.layout, self.layout
            )));
        }
        let offset = self.ops.len();
        self.blocks.extend(other.blocks.into_iter().map(|mut b| {
            b.start += offset;
            b
        }));
        self.ops.extend(other.ops);
        self.add_phase(other.global_phase);
        Ok(())
    }

    pub(crate) fn tag_step(&mut self, from_block: usize, step: usize) {
        for b in &mut self.blocks[from_block..] {
            b.step = Some(step);
        }
    }
}
