//! Dense state-vector simulation over every register of a layout.

use std::fmt::Write;

use num_complex::Complex64;

use crate::circuit::{GateCircuit, GateOp};
use crate::error::{Error, Result};
use crate::plan::Primitive;
use crate::target::{ClassStructure, Half};

pub const DEFAULT_QUBIT_CAP: usize = 22;

#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    qubits: usize,
    amps: Vec<Complex64>,
}

/// Overlap of the main register with a target, given the ancillas at zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityReport {
    pub fidelity: f64,
    /// Probability of any ancilla being nonzero.
    pub leakage: f64,
}

impl Statevector {
    /// `|0...0>` on `qubits` qubits, up to [`DEFAULT_QUBIT_CAP`].
    pub fn zero(qubits: usize) -> Result<Self> {
        Self::zero_with_cap(qubits, DEFAULT_QUBIT_CAP)
    }

    pub fn zero_with_cap(qubits: usize, cap: usize) -> Result<Self> {
        Self::basis_with_cap(qubits, 0, cap)
    }

    pub fn basis(qubits: usize, index: u64) -> Result<Self> {
        Self::basis_with_cap(qubits, index, DEFAULT_QUBIT_CAP)
    }

    fn basis_with_cap(qubits: usize, index: u64, cap: usize) -> Result<Self> {
        if qubits > cap {
            return Err(Error::QubitCapExceeded {
                requested: qubits,
                cap,
            });
        }
        let dim = 1usize << qubits;
        if index as usize >= dim {
            return Err(Error::IndexOutOfRange {
                index: index as usize,
                qubits,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index as usize] = Complex64::new(1.0, 0.0);
        Ok(Statevector { qubits, amps })
    }

    /// Wraps `amps`, whose length must be a power of two. Not renormalized.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::CoefficientCount {
                expected: amps.len().next_power_of_two(),
                got: amps.len(),
            });
        }
        Ok(Statevector {
            qubits: amps.len().trailing_zeros() as usize,
            amps,
        })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &Statevector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn apply_gate(&mut self, gate: &GateOp) -> Result<()> {
        gate.validate(self.qubits)?;
        match *gate {
            GateOp::H(q) => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                self.pairs(q, 0, |a, b| {
                    let (x, y) = (*a, *b);
                    *a = (x + y) * s;
                    *b = (x - y) * s;
                });
            }
            GateOp::X(q) => self.pairs(q, 0, std::mem::swap),
            GateOp::CNot(c, t) => self.pairs(t, 1 << c, std::mem::swap),
            GateOp::Toffoli(c1, c2, t) => self.pairs(t, (1 << c1) | (1 << c2), std::mem::swap),
            GateOp::Rz(q, theta) => {
                let p0 = Complex64::from_polar(1.0, theta / 2.0);
                let p1 = p0.conj();
                self.pairs(q, 0, |a, b| {
                    *a *= p0;
                    *b *= p1;
                });
            }
        }
        Ok(())
    }

    /// Calls `f(amp[i], amp[i | 1<<target])` for every `i` with bit `target`
    /// clear and all bits of `controls` set.
    fn pairs(
        &mut self,
        target: usize,
        controls: usize,
        mut f: impl FnMut(&mut Complex64, &mut Complex64),
    ) {
        let t = 1usize << target;
        for (c, block) in self.amps.chunks_exact_mut(2 * t).enumerate() {
            let base = c * 2 * t;
            let (lo, hi) = block.split_at_mut(t);
            for (i, (a, b)) in lo.iter_mut().zip(hi).enumerate() {
                if (base + i) & controls == controls {
                    f(a, b);
                }
            }
        }
    }

    /// `amp[x] *= e^{i theta}` wherever `selector` accepts the main-register
    /// part of the index, the low `main_bits` bits.
    pub fn apply_diag_phase(
        &mut self,
        main_bits: usize,
        selector: impl Fn(u64) -> bool,
        theta: f64,
    ) {
        let phase = Complex64::from_polar(1.0, theta);
        let mask = (1u64 << main_bits) - 1;
        for (i, a) in self.amps.iter_mut().enumerate() {
            if selector(i as u64 & mask) {
                *a *= phase;
            }
        }
    }

    /// `amp <- 2 mean - amp` over the low `main_bits` bits, separately for
    /// each configuration of the remaining qubits.
    pub fn apply_inversion_about_average(&mut self, main_bits: usize) {
        let block = 1usize << main_bits;
        for chunk in self.amps.chunks_exact_mut(block) {
            let mean = chunk.iter().sum::<Complex64>() / block as f64;
            for a in chunk {
                *a = 2.0 * mean - *a;
            }
        }
    }

    /// Reference action of a plan primitive on the main register.
    pub fn apply_primitive(&mut self, structure: &ClassStructure, primitive: &Primitive) {
        let n = structure.n();
        match primitive {
            Primitive::Diffuse => self.apply_inversion_about_average(n),
            Primitive::HalfPhase { labels, angle } => {
                for &k in labels {
                    for (half, sign) in [(Half::Plus, 1.0), (Half::Minus, -1.0)] {
                        self.apply_diag_phase(
                            n,
                            |x| structure.locate(x) == (k, half),
                            sign * angle,
                        );
                    }
                }
            }
            Primitive::ClassPhase { phases } => {
                for &(k, angle) in phases {
                    self.apply_diag_phase(n, |x| structure.locate(x).0 == k, angle);
                }
            }
        }
    }

    /// Applies every gate in order, then the circuit's global phase.
    pub fn run_circuit(&mut self, circuit: &GateCircuit) -> Result<()> {
        if circuit.layout().total() != self.qubits {
            return Err(Error::LayoutMismatch(format!(
                "circuit uses {} qubits, state has {}",
                circuit.layout().total(),
                self.qubits
            )));
        }
        for op in circuit.ops() {
            self.apply_gate(op)?;
        }
        let phase = Complex64::from_polar(1.0, circuit.global_phase());
        for a in &mut self.amps {
            *a *= phase;
        }
        Ok(())
    }

    /// `|<target|psi>|^2` over the ancilla-zero subspace, where `target`
    /// gives amplitudes on the low `log2(target.len())` qubits.
    pub fn fidelity(&self, target: &[Complex64]) -> FidelityReport {
        let block = target.len().min(self.amps.len());
        let overlap: Complex64 = target
            .iter()
            .zip(&self.amps[..block])
            .map(|(t, a)| t.conj() * a)
            .sum();
        let kept: f64 = self.amps[..block].iter().map(|a| a.norm_sqr()).sum();
        FidelityReport {
            fidelity: overlap.norm_sqr(),
            leakage: (self.norm_sqr() - kept).max(0.0),
        }
    }

    /// Largest `|amp|` with any of the qubits in `mask` set.
    pub fn max_outside(&self, mask: u64) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| *i as u64 & mask != 0)
            .map(|(_, a)| a.norm())
            .fold(0.0, f64::max)
    }

    /// Mean amplitude on each half of each label, taken over the main
    /// register with ancillas at zero, and the largest deviation of any
    /// member from its half's mean.
    pub fn class_amplitudes(&self, structure: &ClassStructure) -> (Vec<[Complex64; 2]>, f64) {
        let mut sums = vec![[Complex64::new(0.0, 0.0); 2]; structure.labels()];
        for x in 0..structure.dim() {
            let (k, half) = structure.locate(x);
            sums[k][half as usize] += self.amps[x as usize];
        }
        for (k, s) in sums.iter_mut().enumerate() {
            let size = structure.half_size(k) as f64;
            s[0] /= size;
            s[1] /= size;
        }
        let spread = (0..structure.dim())
            .map(|x| {
                let (k, half) = structure.locate(x);
                (self.amps[x as usize] - sums[k][half as usize]).norm()
            })
            .fold(0.0, f64::max);
        (sums, spread)
    }

    /// One line per amplitude with `|amp|^2 > threshold`:
    /// `index-in-binary re im`, most significant qubit first.
    pub fn dump(&self, threshold: f64) -> String {
        let mut out = String::new();
        for (i, a) in self.amps.iter().enumerate() {
            if a.norm_sqr() > threshold {
                writeln!(out, "{i:0w$b} {:.17e} {:.17e}", a.re, a.im, w = self.qubits).unwrap();
            }
        }
        out
    }
}
