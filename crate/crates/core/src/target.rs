//! Target states and the labelled class structure they live on.
//!
//! Every target handled here assigns each computational basis vector `x` to a
//! label `k` and to one of two equally sized halves of that label. All basis
//! vectors carrying the same label share one amplitude. For the symmetric
//! family the label of `x` is `min(w, n - w)` where `w` is the Hamming weight;
//! the `+` half holds the vectors of weight `k` and the `-` half those of
//! weight `n - k`. When `n` is even the label `n/2` is split on the lowest
//! main qubit instead.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest qubit count accepted for class-level work.
pub const MAX_QUBITS: usize = 48;

/// Tolerance on `sum mult * |a|^2 == 1` for user targets.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// One of the two equally sized halves of a label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Half {
    Plus,
    Minus,
}

impl Half {
    pub fn sign(self) -> f64 {
        match self {
            Half::Plus => 1.0,
            Half::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Half::Plus => '+',
            Half::Minus => '-',
        }
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc as u64
}

/// Partition of `{0,1}^n` into labels, each split into a `+` and a `-` half.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassStructure {
    n: usize,
    half_sizes: Vec<u64>,
    table: Option<Vec<(u32, Half)>>,
}

impl ClassStructure {
    /// Hamming-weight pairs `{k, n-k}` for `k = 0..=n/2`.
    pub fn symmetric(n: usize) -> Result<Self> {
        check_qubits(n)?;
        let half_sizes = (0..=n / 2)
            .map(|k| {
                let c = binomial(n as u64, k as u64);
                if 2 * k == n {
                    c / 2
                } else {
                    c
                }
            })
            .collect();
        Ok(ClassStructure {
            n,
            half_sizes,
            table: None,
        })
    }

    /// Arbitrary labelling given as one `(label, half)` entry per basis index.
    pub fn general(n: usize, table: Vec<(u32, Half)>) -> Result<Self> {
        check_qubits(n)?;
        if n > 24 {
            return Err(Error::InvalidTable(format!(
                "explicit tables are limited to 24 qubits, got {n}"
            )));
        }
        if table.len() != 1usize << n {
            return Err(Error::InvalidTable(format!(
                "expected {} entries, got {}",
                1usize << n,
                table.len()
            )));
        }
        let labels = table.iter().map(|&(k, _)| k as usize).max().unwrap_or(0) + 1;
        let mut counts = vec![[0u64; 2]; labels];
        for &(k, half) in &table {
            counts[k as usize][half as usize] += 1;
        }
        for (k, [plus, minus]) in counts.iter().enumerate() {
            if *plus == 0 || plus != minus {
                return Err(Error::InvalidTable(format!(
                    "label {k} has {plus} '+' and {minus} '-' members; both halves must be equal and non-empty"
                )));
            }
        }
        Ok(ClassStructure {
            n,
            half_sizes: counts.iter().map(|c| c[0]).collect(),
            table: Some(table),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> u64 {
        1u64 << self.n
    }

    pub fn labels(&self) -> usize {
        self.half_sizes.len()
    }

    pub fn is_symmetric(&self) -> bool {
        self.table.is_none()
    }

    pub fn table(&self) -> Option<&[(u32, Half)]> {
        self.table.as_deref()
    }

    pub fn half_size(&self, label: usize) -> u64 {
        self.half_sizes[label]
    }

    pub fn multiplicity(&self, label: usize) -> u64 {
        2 * self.half_sizes[label]
    }

    pub fn half_sizes(&self) -> &[u64] {
        &self.half_sizes
    }

    /// Label and half of basis index `x`.
    pub fn locate(&self, x: u64) -> (usize, Half) {
        match &self.table {
            Some(table) => {
                let (k, half) = table[x as usize];
                (k as usize, half)
            }
            None => {
                let w = x.count_ones() as usize;
                let n = self.n;
                if 2 * w < n {
                    (w, Half::Plus)
                } else if 2 * w > n {
                    (n - w, Half::Minus)
                } else if x & 1 == 0 {
                    (w, Half::Plus)
                } else {
                    (w, Half::Minus)
                }
            }
        }
    }
}

fn check_qubits(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::TooFewQubits(n))
    } else if n > MAX_QUBITS {
        Err(Error::TooManyQubits(n))
    } else {
        Ok(())
    }
}

fn squared_norm(structure: &ClassStructure, coeffs: &[Complex64]) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| structure.multiplicity(k) as f64 * c.norm_sqr())
        .sum()
}

fn check_norm(structure: &ClassStructure, coeffs: &[Complex64]) -> Result<()> {
    let norm = squared_norm(structure, coeffs);
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        Err(Error::NotNormalized(norm))
    } else {
        Ok(())
    }
}

fn rescale(structure: &ClassStructure, coeffs: &mut [Complex64]) -> Result<()> {
    let norm = squared_norm(structure, coeffs);
    if !(norm.is_finite() && norm > 0.0) {
        return Err(Error::NotNormalized(norm));
    }
    let scale = norm.sqrt().recip();
    coeffs.iter_mut().for_each(|c| *c *= scale);
    Ok(())
}

/// Polar split `a = |a| e^{i phi}` with `phi` in `[0, 2pi)`; zero maps to phase 0.
fn polar_parts(coeffs: &[Complex64]) -> (Vec<Complex64>, Vec<f64>) {
    coeffs
        .iter()
        .map(|c| {
            let r = c.norm();
            let phase = if r == 0.0 || c.im == 0.0 && c.re > 0.0 {
                0.0
            } else {
                c.arg().rem_euclid(TAU)
            };
            (Complex64::new(r, 0.0), phase)
        })
        .unzip()
}

fn dense(structure: &ClassStructure, coeffs: &[Complex64]) -> Vec<Complex64> {
    (0..structure.dim())
        .map(|x| coeffs[structure.locate(x).0])
        .collect()
}

/// Permutation- and bit-flip-invariant target `sum_k a_k |k>_s`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricTarget {
    structure: ClassStructure,
    coeffs: Vec<Complex64>,
}

impl SymmetricTarget {
    pub fn new(n: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        let target = Self::unchecked(n, coeffs)?;
        check_norm(&target.structure, &target.coeffs)?;
        Ok(target)
    }

    pub fn from_real(n: usize, coeffs: &[f64]) -> Result<Self> {
        Self::new(n, coeffs.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// Rescales `coeffs` to unit norm before validating.
    pub fn normalized(n: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        let mut target = Self::unchecked(n, coeffs)?;
        rescale(&target.structure, &mut target.coeffs)?;
        Ok(target)
    }

    fn unchecked(n: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        let structure = ClassStructure::symmetric(n)?;
        if coeffs.len() != structure.labels() {
            return Err(Error::CoefficientCount {
                expected: structure.labels(),
                got: coeffs.len(),
            });
        }
        Ok(SymmetricTarget { structure, coeffs })
    }

    /// `(|0..0> + |1..1>)/sqrt(2)`.
    pub fn ghz(n: usize) -> Result<Self> {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n / 2 + 1];
        coeffs[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::new(n, coeffs)
    }

    pub fn uniform(n: usize) -> Result<Self> {
        let u = 0.5f64.powf(n as f64 / 2.0);
        Self::new(n, vec![Complex64::new(u, 0.0); n / 2 + 1])
    }

    pub fn n(&self) -> usize {
        self.structure.n()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn structure(&self) -> &ClassStructure {
        &self.structure
    }

    /// Multiplicity `2 C(n,k)`, or `C(n, n/2)` for the middle label of even `n`.
    pub fn multiplicity(&self, k: usize) -> u64 {
        self.structure.multiplicity(k)
    }

    /// Replaces every coefficient by its modulus and returns the removed phases.
    pub fn phase_canonicalize(&self) -> (SymmetricTarget, Vec<f64>) {
        let (coeffs, phases) = polar_parts(&self.coeffs);
        (
            SymmetricTarget {
                structure: self.structure.clone(),
                coeffs,
            },
            phases,
        )
    }

    pub fn amplitudes(&self) -> Vec<Complex64> {
        dense(&self.structure, &self.coeffs)
    }
}

/// State defined by an explicit labelling `f(x) = (k, +/-)` with one
/// coefficient per label.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralClassSpec {
    structure: ClassStructure,
    coeffs: Vec<Complex64>,
}

impl GeneralClassSpec {
    pub fn new(n: usize, table: Vec<(u32, Half)>, coeffs: Vec<Complex64>) -> Result<Self> {
        let spec = Self::unchecked(n, table, coeffs)?;
        check_norm(&spec.structure, &spec.coeffs)?;
        Ok(spec)
    }

    pub fn normalized(n: usize, table: Vec<(u32, Half)>, coeffs: Vec<Complex64>) -> Result<Self> {
        let mut spec = Self::unchecked(n, table, coeffs)?;
        rescale(&spec.structure, &mut spec.coeffs)?;
        Ok(spec)
    }

    fn unchecked(n: usize, table: Vec<(u32, Half)>, coeffs: Vec<Complex64>) -> Result<Self> {
        let structure = ClassStructure::general(n, table)?;
        if coeffs.len() != structure.labels() {
            return Err(Error::CoefficientCount {
                expected: structure.labels(),
                got: coeffs.len(),
            });
        }
        Ok(GeneralClassSpec { structure, coeffs })
    }

    pub fn n(&self) -> usize {
        self.structure.n()
    }

    /// Largest label `M`.
    pub fn max_label(&self) -> usize {
        self.structure.labels() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn structure(&self) -> &ClassStructure {
        &self.structure
    }

    pub fn phase_canonicalize(&self) -> (GeneralClassSpec, Vec<f64>) {
        let (coeffs, phases) = polar_parts(&self.coeffs);
        (
            GeneralClassSpec {
                structure: self.structure.clone(),
                coeffs,
            },
            phases,
        )
    }

    pub fn amplitudes(&self) -> Vec<Complex64> {
        dense(&self.structure, &self.coeffs)
    }
}

/// Either kind of target.
#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    Symmetric(SymmetricTarget),
    General(GeneralClassSpec),
}

impl Target {
    pub fn structure(&self) -> &ClassStructure {
        match self {
            Target::Symmetric(t) => t.structure(),
            Target::General(t) => t.structure(),
        }
    }

    pub fn n(&self) -> usize {
        self.structure().n()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        match self {
            Target::Symmetric(t) => t.coeffs(),
            Target::General(t) => t.coeffs(),
        }
    }

    pub fn phase_canonicalize(&self) -> (Target, Vec<f64>) {
        match self {
            Target::Symmetric(t) => {
                let (t, p) = t.phase_canonicalize();
                (Target::Symmetric(t), p)
            }
            Target::General(t) => {
                let (t, p) = t.phase_canonicalize();
                (Target::General(t), p)
            }
        }
    }

    /// Dense amplitude vector over the `2^n` main-register basis states.
    pub fn amplitudes(&self) -> Vec<Complex64> {
        dense(self.structure(), self.coeffs())
    }
}

impl From<SymmetricTarget> for Target {
    fn from(t: SymmetricTarget) -> Self {
        Target::Symmetric(t)
    }
}

impl From<GeneralClassSpec> for Target {
    fn from(t: GeneralClassSpec) -> Self {
        Target::General(t)
    }
}
