//! Target spec files.
//!
//! ```text
//! # 4-qubit GHZ
//! n 4
//! mode symmetric
//! coeff 0 0.7071067811865476
//! ```
//!
//! `coeff k re [im]` sets the coefficient of label `k`; unlisted labels are
//! zero. General mode puts a `table <rows>` block (as in plan files) before
//! the coefficients.

use std::fmt::Write as _;

use num_complex::Complex64;
use rand::Rng;
use symprep_core::plan::parse_table_rows;
use symprep_core::{Error, GeneralClassSpec, Half, Result, SymmetricTarget, Target};

pub fn parse_spec(text: &str, normalize: bool) -> Result<Target> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let mut n: Option<usize> = None;
    let mut general = false;
    let mut table: Option<Vec<(u32, Half)>> = None;
    let mut coeffs: Vec<(usize, usize, Complex64)> = Vec::new();
    let mut last = 0;

    while let Some((no, line)) = lines.next() {
        last = no;
        let mut fields = line.split_whitespace();
        let key = fields.next().unwrap_or_default();
        let rest: Vec<&str> = fields.collect();
        match (key, rest.as_slice()) {
            ("n", [v]) => {
                if n.is_some() {
                    return Err(parse(no, "`n` given twice"));
                }
                n = Some(
                    v.parse()
                        .map_err(|_| parse(no, format!("bad qubit count `{v}`")))?,
                );
            }
            ("mode", ["symmetric"]) => general = false,
            ("mode", ["general"]) => general = true,
            ("mode", _) => return Err(parse(no, "mode must be `symmetric` or `general`")),
            ("table", [rows]) => {
                let n = n.ok_or_else(|| parse(no, "`table` before `n`"))?;
                let rows: usize = rows
                    .parse()
                    .map_err(|_| parse(no, format!("bad row count `{rows}`")))?;
                let rows = parse_table_rows(n, rows, || {
                    lines.next().ok_or(Error::Parse {
                        line: no + rows,
                        msg: "unexpected end of file, expected table row".into(),
                    })
                })
                .map_err(|e| match e {
                    Error::Parse { .. } => e,
                    e => parse(no, e.to_string()),
                })?;
                table = Some(rows);
            }
            ("coeff", [k, re, im @ ..]) if im.len() <= 1 => {
                let k: usize = k
                    .parse()
                    .map_err(|_| parse(no, format!("bad label `{k}`")))?;
                let re: f64 = number(no, re)?;
                let im = im.first().map_or(Ok(0.0), |v| number(no, v))?;
                if coeffs.iter().any(|c| c.0 == k) {
                    return Err(parse(no, format!("label {k} given twice")));
                }
                coeffs.push((k, no, Complex64::new(re, im)));
            }
            _ => return Err(parse(no, format!("unrecognized line `{line}`"))),
        }
    }

    let n = n.ok_or_else(|| parse(last + 1, "missing `n`"))?;
    let labels = match (&table, general) {
        (Some(t), true) => t.iter().map(|e| e.0 as usize).max().unwrap_or(0) + 1,
        (None, true) => return Err(parse(last + 1, "general mode needs a `table`")),
        (Some(_), false) => return Err(parse(last + 1, "`table` needs `mode general`")),
        (None, false) => n / 2 + 1,
    };
    let mut values = vec![Complex64::new(0.0, 0.0); labels];
    for (k, no, c) in coeffs {
        if k >= labels {
            return Err(parse(no, format!("label {k} out of range (0..{labels})")));
        }
        values[k] = c;
    }
    match table {
        Some(t) if normalize => GeneralClassSpec::normalized(n, t, values).map(Target::from),
        Some(t) => GeneralClassSpec::new(n, t, values).map(Target::from),
        None if normalize => SymmetricTarget::normalized(n, values).map(Target::from),
        None => SymmetricTarget::new(n, values).map(Target::from),
    }
}

fn parse(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn number(line: usize, s: &str) -> Result<f64> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(parse(line, format!("bad number `{s}`"))),
    }
}

pub fn write_spec(target: &Target) -> String {
    let mut out = String::new();
    let n = target.n();
    writeln!(out, "n {n}").unwrap();
    match target.structure().table() {
        None => writeln!(out, "mode symmetric").unwrap(),
        Some(table) => {
            writeln!(out, "mode general").unwrap();
            writeln!(out, "table {}", table.len()).unwrap();
            for (x, (k, half)) in table.iter().enumerate() {
                writeln!(out, "{x:0n$b} {k} {half}").unwrap();
            }
        }
    }
    for (k, c) in target.coeffs().iter().enumerate() {
        if c.norm_sqr() == 0.0 {
            continue;
        }
        if c.im == 0.0 {
            writeln!(out, "coeff {k} {:?}", c.re).unwrap();
        } else {
            writeln!(out, "coeff {k} {:?} {:?}", c.re, c.im).unwrap();
        }
    }
    out
}

/// Normalized coefficients uniform in the unit square.
pub fn spread_target(n: usize, rng: &mut impl Rng) -> Result<Target> {
    let coeffs = (0..=n / 2)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    SymmetricTarget::normalized(n, coeffs).map(Target::from)
}

/// One dominant label, the rest below 0.05, random phases.
pub fn peaked_target(n: usize, rng: &mut impl Rng) -> Result<Target> {
    let peak = rng.gen_range(0..=n / 2);
    let eps = rng.gen_range(0.0..0.05);
    let coeffs = (0..=n / 2)
        .map(|k| {
            let r = if k == peak {
                1.0
            } else {
                rng.gen_range(0.0..=eps)
            };
            Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
        })
        .collect();
    SymmetricTarget::normalized(n, coeffs).map(Target::from)
}
