//! Exact compressed simulation over label halves.
//!
//! Within a half of a label every basis vector carries the same amplitude,
//! and all plan primitives preserve that. Two complex numbers per label are
//! therefore a faithful representation of every intermediate state,
//! including the complex ones that [`ClassifiedState`] cannot hold.

use num_complex::Complex64;

use crate::classes::ClassifiedState;
use crate::plan::Primitive;
use crate::target::{ClassStructure, Half, Target};

#[derive(Debug, Clone, PartialEq)]
pub struct SplitState {
    n: usize,
    half_sizes: Vec<u64>,
    amps: Vec<[Complex64; 2]>,
}

impl SplitState {
    pub fn from_target(target: &Target) -> Self {
        let structure = target.structure();
        SplitState {
            n: structure.n(),
            half_sizes: structure.half_sizes().to_vec(),
            amps: target.coeffs().iter().map(|&c| [c, c]).collect(),
        }
    }

    pub fn from_classified(structure: &ClassStructure, state: &ClassifiedState) -> Self {
        let amps = state
            .label_values()
            .into_iter()
            .map(|v| [Complex64::new(v, 0.0); 2])
            .collect();
        SplitState {
            n: structure.n(),
            half_sizes: structure.half_sizes().to_vec(),
            amps,
        }
    }

    pub fn uniform(structure: &ClassStructure) -> Self {
        Self::from_classified(structure, &ClassifiedState::uniform(structure))
    }

    pub fn amplitude(&self, label: usize, half: Half) -> Complex64 {
        self.amps[label][half as usize]
    }

    pub fn labels(&self) -> usize {
        self.amps.len()
    }

    /// `+angle` on the `+` half and `-angle` on the `-` half of each label.
    pub fn half_phase(&mut self, labels: &[usize], angle: f64) {
        let plus = Complex64::cis(angle);
        let minus = plus.conj();
        for &l in labels {
            self.amps[l][0] *= plus;
            self.amps[l][1] *= minus;
        }
    }

    /// Same phase on both halves of `label`.
    pub fn class_phase(&mut self, label: usize, angle: f64) {
        let p = Complex64::cis(angle);
        self.amps[label][0] *= p;
        self.amps[label][1] *= p;
    }

    /// Inversion about average: `a -> 2 mean - a`.
    pub fn diffuse(&mut self) {
        let total: Complex64 = self
            .amps
            .iter()
            .zip(&self.half_sizes)
            .map(|([p, m], &h)| (p + m) * h as f64)
            .sum();
        let twice_mean = total / 2f64.powi(self.n as i32 - 1);
        for pair in &mut self.amps {
            pair[0] = twice_mean - pair[0];
            pair[1] = twice_mean - pair[1];
        }
    }

    pub fn apply(&mut self, primitive: &Primitive) {
        match primitive {
            Primitive::HalfPhase { labels, angle } => self.half_phase(labels, *angle),
            Primitive::ClassPhase { phases } => {
                for &(label, angle) in phases {
                    self.class_phase(label, angle);
                }
            }
            Primitive::Diffuse => self.diffuse(),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps
            .iter()
            .zip(&self.half_sizes)
            .map(|([p, m], &h)| (p.norm_sqr() + m.norm_sqr()) * h as f64)
            .sum()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &SplitState) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .zip(&self.half_sizes)
            .map(|(([a, b], [c, d]), &h)| (a.conj() * c + b.conj() * d) * h as f64)
            .sum()
    }

    pub fn fidelity(&self, other: &SplitState) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Largest per-amplitude distance to `other`.
    pub fn max_distance(&self, other: &SplitState) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .flat_map(|([a, b], [c, d])| [(a - c).norm(), (b - d).norm()])
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self, structure: &ClassStructure) -> Vec<Complex64> {
        (0..structure.dim())
            .map(|x| {
                let (label, half) = structure.locate(x);
                self.amps[label][half as usize]
            })
            .collect()
    }
}
