//! Line-oriented plan files.
//!
//! ```text
//! symprep-plan 1
//! n 4
//! mode symmetric
//! direction build
//! step phases 1=-0x1.0c152382d7366p+0
//! step rdr lo=0 hi=1,2 theta=-0x1.921fb54442d18p-1 phi=-0x1.2d97c7f3321d2p+2
//! step rpid flips=1,2
//! step piflip labels=2
//! end
//! ```
//!
//! General-mode plans carry their class table between `mode` and the steps:
//! a `table <rows>` line followed by one `bitstring label sign` row per basis
//! state, bitstrings written most significant qubit first. Angles are
//! hexadecimal floats.

use std::fmt::Write as _;

use super::{hexfloat, Plan, PlanStep};
use crate::classes::ClassifiedState;
use crate::error::{Direction, Error, Result};
use crate::target::{ClassStructure, Half};

const MAGIC: &str = "symprep-plan 1";

pub fn write_plan(plan: &Plan) -> String {
    let mut out = String::new();
    let n = plan.n();
    writeln!(out, "{MAGIC}").unwrap();
    writeln!(out, "n {n}").unwrap();
    match plan.structure.table() {
        None => writeln!(out, "mode symmetric").unwrap(),
        Some(table) => {
            writeln!(out, "mode general").unwrap();
            writeln!(out, "table {}", table.len()).unwrap();
            for (x, (k, half)) in table.iter().enumerate() {
                writeln!(out, "{:0width$b} {k} {half}", x, width = n).unwrap();
            }
        }
    }
    writeln!(out, "direction {}", plan.direction).unwrap();
    for step in &plan.steps {
        out.push_str("step ");
        match step {
            PlanStep::RdrMerge { lo, hi, theta, phi } => write!(
                out,
                "rdr lo={} hi={} theta={} phi={}",
                join(lo),
                join(hi),
                hexfloat::format(*theta),
                hexfloat::format(*phi)
            ),
            PlanStep::RpiD { flips } => write!(out, "rpid flips={}", join(flips)),
            PlanStep::PiFlip { labels } => write!(out, "piflip labels={}", join(labels)),
            PlanStep::ClassPhases { phases } => {
                let body: Vec<_> = phases
                    .iter()
                    .map(|&(l, a)| format!("{l}={}", hexfloat::format(a)))
                    .collect();
                write!(out, "phases {}", body.join(";"))
            }
        }
        .unwrap();
        out.push('\n');
    }
    out.push_str("end\n");
    out
}

/// Human-readable class snapshots, one block per step boundary.
pub fn write_trace(plan: &Plan) -> String {
    let mut out = String::new();
    for (i, state) in plan.trace.iter().enumerate() {
        let label = if i == 0 {
            "start".to_string()
        } else {
            format!("after step {} ({})", i, plan.steps[i - 1].kind())
        };
        writeln!(out, "# {label}: {} classes", state.len()).unwrap();
        write_classes(&mut out, state);
    }
    out
}

fn write_classes(out: &mut String, state: &ClassifiedState) {
    for class in state.classes() {
        writeln!(
            out,
            "{} value={:.17e} mult={} labels={}",
            class.id(),
            class.value,
            class.multiplicity,
            join(&class.labels)
        )
        .unwrap();
    }
}

fn join(labels: &[usize]) -> String {
    labels
        .iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

struct Lines<'a> {
    inner: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate().peekable(),
            last: 0,
        }
    }

    /// Next non-blank, non-comment line with its 1-based number.
    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (i, raw) in self.inner.by_ref() {
            let line = raw.split('#').next().unwrap_or("").trim();
            self.last = i + 1;
            if !line.is_empty() {
                return Some((i + 1, line));
            }
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.next().ok_or_else(|| {
            Error::parse(
                self.last + 1,
                format!("unexpected end of file, expected {what}"),
            )
        })
    }

    fn keyed(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let (line, text) = self.expect(key)?;
        match text.split_once(char::is_whitespace) {
            Some((k, v)) if k == key => Ok((line, v.trim())),
            _ => Err(Error::parse(
                line,
                format!("expected `{key} ...`, found `{text}`"),
            )),
        }
    }
}

pub fn read_plan(text: &str) -> Result<Plan> {
    let mut lines = Lines::new(text);
    let (line, magic) = lines.expect("header")?;
    if magic != MAGIC {
        return Err(Error::parse(line, format!("expected header `{MAGIC}`")));
    }
    let (line, n) = lines.keyed("n")?;
    let n: usize = n
        .parse()
        .map_err(|_| Error::parse(line, format!("bad qubit count `{n}`")))?;
    let (line, mode) = lines.keyed("mode")?;
    let structure = match mode {
        "symmetric" => {
            ClassStructure::symmetric(n).map_err(|e| Error::parse(line, e.to_string()))?
        }
        "general" => read_table(&mut lines, n)?,
        other => return Err(Error::parse(line, format!("unknown mode `{other}`"))),
    };
    let (line, dir) = lines.keyed("direction")?;
    let direction = match dir {
        "reduce" => Direction::Reduce,
        "build" => Direction::Build,
        other => return Err(Error::parse(line, format!("unknown direction `{other}`"))),
    };
    let mut steps = Vec::new();
    loop {
        let (line, text) = lines.expect("`step` or `end`")?;
        if text == "end" {
            break;
        }
        let body = text.strip_prefix("step ").ok_or_else(|| {
            Error::parse(line, format!("expected `step` or `end`, found `{text}`"))
        })?;
        let step = parse_step(body, structure.labels()).map_err(|msg| Error::parse(line, msg))?;
        steps.push(step);
    }
    Ok(Plan::new(structure, direction, steps))
}

fn read_table(lines: &mut Lines<'_>, n: usize) -> Result<ClassStructure> {
    let (line, rows) = lines.keyed("table")?;
    let rows: usize = rows
        .parse()
        .map_err(|_| Error::parse(line, format!("bad row count `{rows}`")))?;
    let table = parse_table_rows(n, rows, || lines.expect("table row"))?;
    ClassStructure::general(n, table).map_err(|e| Error::parse(line, e.to_string()))
}

/// Reads `rows` lines of `bitstring label sign`, in any order.
pub fn parse_table_rows<'a>(
    n: usize,
    rows: usize,
    mut next: impl FnMut() -> Result<(usize, &'a str)>,
) -> Result<Vec<(u32, Half)>> {
    if n > 24 {
        return Err(Error::InvalidTable(format!(
            "explicit tables are limited to 24 qubits, got {n}"
        )));
    }
    let dim = 1usize << n;
    if rows != dim {
        return Err(Error::InvalidTable(format!(
            "table must list all {dim} basis states, got {rows}"
        )));
    }
    let mut table: Vec<Option<(u32, Half)>> = vec![None; dim];
    for _ in 0..rows {
        let (line, text) = next()?;
        let fields: Vec<_> = text.split_whitespace().collect();
        let [bits, k, sign] = fields[..] else {
            return Err(Error::parse(line, "expected `bitstring label sign`"));
        };
        if bits.len() != n {
            return Err(Error::parse(
                line,
                format!("bitstring `{bits}` is not {n} bits"),
            ));
        }
        let x = usize::from_str_radix(bits, 2)
            .map_err(|_| Error::parse(line, format!("bad bitstring `{bits}`")))?;
        let k: u32 = k
            .parse()
            .map_err(|_| Error::parse(line, format!("bad label `{k}`")))?;
        let half = match sign {
            "+" => Half::Plus,
            "-" => Half::Minus,
            other => {
                return Err(Error::parse(
                    line,
                    format!("sign must be + or -, got `{other}`"),
                ))
            }
        };
        if table[x].replace((k, half)).is_some() {
            return Err(Error::parse(
                line,
                format!("basis state {bits} listed twice"),
            ));
        }
    }
    Ok(table
        .into_iter()
        .map(|e| e.expect("all rows filled"))
        .collect())
}

fn parse_step(body: &str, labels: usize) -> std::result::Result<PlanStep, String> {
    let mut parts = body.split_whitespace();
    let kind = parts.next().ok_or("empty step")?;
    let mut fields = std::collections::HashMap::new();
    for part in parts {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, found `{part}`"))?;
        fields.insert(k, v);
    }
    let get = |key: &str| {
        fields
            .get(key)
            .copied()
            .ok_or_else(|| format!("`{kind}` step is missing `{key}`"))
    };
    let label_list = |key: &str| -> std::result::Result<Vec<usize>, String> {
        let v = get(key)?;
        v.split(',').map(|s| parse_label(s, labels)).collect()
    };
    let angle = |key: &str| -> std::result::Result<f64, String> {
        let v = get(key)?;
        hexfloat::parse(v).ok_or_else(|| format!("bad angle `{v}`"))
    };
    match kind {
        "rdr" => Ok(PlanStep::RdrMerge {
            lo: label_list("lo")?,
            hi: label_list("hi")?,
            theta: angle("theta")?,
            phi: angle("phi")?,
        }),
        "rpid" => Ok(PlanStep::RpiD {
            flips: label_list("flips")?,
        }),
        "piflip" => Ok(PlanStep::PiFlip {
            labels: label_list("labels")?,
        }),
        "phases" => {
            let raw = body
                .strip_prefix("phases")
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .ok_or("`phases` step needs label=angle entries")?;
            let phases = raw
                .split(';')
                .map(|entry| {
                    let (l, a) = entry
                        .split_once('=')
                        .ok_or_else(|| format!("expected label=angle, found `{entry}`"))?;
                    let a = hexfloat::parse(a).ok_or_else(|| format!("bad angle `{a}`"))?;
                    Ok((parse_label(l, labels)?, a))
                })
                .collect::<std::result::Result<_, String>>()?;
            Ok(PlanStep::ClassPhases { phases })
        }
        other => Err(format!("unknown step kind `{other}`")),
    }
}

fn parse_label(s: &str, labels: usize) -> std::result::Result<usize, String> {
    let l: usize = s.trim().parse().map_err(|_| format!("bad label `{s}`"))?;
    if l >= labels {
        return Err(format!("label {l} out of range (structure has {labels})"));
    }
    Ok(l)
}
