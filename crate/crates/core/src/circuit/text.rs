//! Circuit text format: a layout header, the global phase, then one gate per
//! line as `GATE q[,q[,q]][,angle]`. Lines starting with `#` are comments.

use std::fmt::Write;

use super::{GateCircuit, GateOp, RegisterLayout};
use crate::error::{Error, Result};

fn angle(a: f64) -> String {
    format!("{a:.16e}")
}

impl GateCircuit {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.layout()).unwrap();
        writeln!(out, "phase {}", angle(self.global_phase())).unwrap();
        let mut blocks = self.blocks().iter().peekable();
        for (i, op) in self.ops().iter().enumerate() {
            while let Some(b) = blocks.next_if(|b| b.start == i) {
                match b.step {
                    Some(s) => writeln!(out, "# {} step {s}", b.kind.as_str()),
                    None => writeln!(out, "# {}", b.kind.as_str()),
                }
                .unwrap();
            }
            let line = match *op {
                GateOp::H(q) => format!("H {q}"),
                GateOp::X(q) => format!("X {q}"),
                GateOp::Rz(q, a) => format!("RZ {q},{}", angle(a)),
                GateOp::CNot(c, t) => format!("CNOT {c},{t}"),
                GateOp::Toffoli(a, b, t) => format!("TOFFOLI {a},{b},{t}"),
            };
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (no, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty circuit file"))?;
        let layout = parse_header(no, header)?;
        let (no, phase) = lines
            .next()
            .ok_or_else(|| Error::parse(no + 1, "missing 'phase' line"))?;
        let global_phase = phase
            .strip_prefix("phase ")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::parse(no, format!("expected 'phase <angle>', got '{phase}'")))?;

        let mut ops = Vec::new();
        for (no, line) in lines {
            let op =
                parse_gate(line).ok_or_else(|| Error::parse(no, format!("bad gate '{line}'")))?;
            op.validate(layout.total())
                .map_err(|e| Error::parse(no, e.to_string()))?;
            ops.push(op);
        }
        GateCircuit::from_ops(layout, ops, global_phase)
    }
}

fn parse_header(no: usize, line: &str) -> Result<RegisterLayout> {
    let bad = || {
        Error::parse(
            no,
            format!("expected 'qubits Q main= sum= carry= kickback=', got '{line}'"),
        )
    };
    let mut parts = line.split_whitespace();
    if parts.next() != Some("qubits") {
        return Err(bad());
    }
    let total: usize = parts.next().and_then(|v| v.parse().ok()).ok_or_else(bad)?;
    let mut field = |name: &str| -> Result<usize> {
        parts
            .next()
            .and_then(|p| p.strip_prefix(name))
            .and_then(|p| p.strip_prefix('='))
            .and_then(|v| v.parse().ok())
            .ok_or_else(bad)
    };
    let main = field("main")?;
    let sum = field("sum")?;
    let carry = field("carry")?;
    let kickback = field("kickback")?;
    if kickback > 1 {
        return Err(bad());
    }
    let layout = RegisterLayout::custom(main, sum, carry, kickback == 1);
    if layout.total() != total {
        return Err(Error::parse(
            no,
            format!(
                "register sizes add up to {}, header says {total}",
                layout.total()
            ),
        ));
    }
    Ok(layout)
}

fn parse_gate(line: &str) -> Option<GateOp> {
    let (name, args) = line.split_once(' ')?;
    let args: Vec<_> = args.split(',').map(str::trim).collect();
    let q = |i: usize| args.get(i)?.parse::<usize>().ok();
    let op = match (name, args.len()) {
        ("H", 1) => GateOp::H(q(0)?),
        ("X", 1) => GateOp::X(q(0)?),
        ("RZ", 2) => GateOp::Rz(q(0)?, args[1].parse().ok()?),
        ("CNOT", 2) => GateOp::CNot(q(0)?, q(1)?),
        ("TOFFOLI", 3) => GateOp::Toffoli(q(0)?, q(1)?, q(2)?),
        _ => return None,
    };
    Some(op)
}
