#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use symprep_core::{ClassifiedState, CoefficientClass, SymmetricTarget, Target};

/// Coefficients uniform in the unit square, normalized.
pub fn spread_target(n: usize, rng: &mut impl Rng) -> Target {
    let coeffs = (0..=n / 2)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    SymmetricTarget::normalized(n, coeffs).unwrap().into()
}

/// One dominant label, the rest small, random phases throughout.
pub fn peaked_target(n: usize, rng: &mut impl Rng) -> Target {
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
    SymmetricTarget::normalized(n, coeffs).unwrap().into()
}

/// Alternates between the two families.
pub fn random_target(n: usize, i: usize, rng: &mut impl Rng) -> Target {
    if i % 2 == 0 {
        spread_target(n, rng)
    } else {
        peaked_target(n, rng)
    }
}

/// Random even multiplicities summing to `2^n`, one label per class.
pub fn random_multiplicities(n: usize, classes: usize, rng: &mut impl Rng) -> Vec<u64> {
    let halves = 1u64 << (n - 1);
    let mut cuts: Vec<u64> = Vec::new();
    while cuts.len() < classes - 1 {
        let c = rng.gen_range(1..halves);
        if !cuts.contains(&c) {
            cuts.push(c);
        }
    }
    cuts.sort_unstable();
    cuts.push(halves);
    let mut prev = 0;
    cuts.iter()
        .map(|&c| {
            let m = 2 * (c - prev);
            prev = c;
            m
        })
        .collect()
}

/// Normalized state with the given multiplicities and raw values.
pub fn classified(n: usize, mults: &[u64], values: &[f64]) -> ClassifiedState {
    let norm: f64 = mults
        .iter()
        .zip(values)
        .map(|(&m, v)| m as f64 * v * v)
        .sum();
    let classes = mults
        .iter()
        .zip(values)
        .enumerate()
        .map(|(i, (&m, v))| CoefficientClass::new(v / norm.sqrt(), m, vec![i]))
        .collect();
    ClassifiedState::new(n, classes).unwrap()
}
