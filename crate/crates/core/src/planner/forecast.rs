//! Closed-form behaviour of the amplification loop.

use crate::classes::{sufficient_condition, ClassifiedState};
use crate::error::{Error, Result};

use super::find_min_pair;

/// Closed-form trajectory of repeated `(R_pi D)` on a two-class state
/// `a0` on `2^n - t` vectors, `a1` on `t` vectors.
///
/// Writing `sin^2(g) = t / 2^n`, `a0 = sin(alpha)/sqrt(2^n - t)` and
/// `a1 = cos(alpha)/sqrt(t)`, after `k` iterations the amplitudes are
/// `sin(alpha + 2kg)/sqrt(2^n - t)` and `cos(alpha + 2kg)/sqrt(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationForecast {
    pub n: usize,
    pub t: u64,
    pub grover_angle: f64,
    pub alpha: f64,
    pub k_max: f64,
}

impl IterationForecast {
    pub fn new(n: usize, t: u64, alpha: f64) -> Self {
        let grover_angle = (t as f64 / 2f64.powi(n as i32)).sqrt().asin();
        let k_max = (std::f64::consts::FRAC_PI_2 - 3.0 * grover_angle) / (2.0 * grover_angle);
        IterationForecast {
            n,
            t,
            grover_angle,
            alpha,
            k_max,
        }
    }

    /// `(B_0^(k), B_1^(k))`.
    pub fn trajectory(&self, k: u64) -> (f64, f64) {
        let angle = self.alpha + 2.0 * k as f64 * self.grover_angle;
        let small = 2f64.powi(self.n as i32) - self.t as f64;
        (
            angle.sin() / small.sqrt(),
            angle.cos() / (self.t as f64).sqrt(),
        )
    }

    /// `F^(k) = cos(alpha + (2k + 3) g)`; the condition holds once it is `<= 0`.
    pub fn sign_functional(&self, k: u64) -> f64 {
        (self.alpha + (2 * k + 3) as f64 * self.grover_angle).cos()
    }

    /// `S^(k) - 2^{n-2} (B_0^(k) + B_1^(k))` from the closed form.
    pub fn condition(&self, k: u64) -> f64 {
        -2f64.powf((self.n as f64 - 2.0) / 2.0) / (2.0 * self.grover_angle).sin()
            * self.sign_functional(k)
    }
}

/// Forecast for a two-class state; `t` counts the vectors of the larger value.
pub fn forecast_rpid(state: &ClassifiedState) -> Result<IterationForecast> {
    if state.len() != 2 {
        return Err(Error::NotTwoClass(state.len()));
    }
    let (small, large) = {
        let [a, b] = state.classes() else {
            unreachable!()
        };
        if a.value <= b.value {
            (a, b)
        } else {
            (b, a)
        }
    };
    let t = large.multiplicity;
    let rest = (state.classes()[0].multiplicity + state.classes()[1].multiplicity - t) as f64;
    let alpha = (small.value * rest.sqrt()).atan2(large.value * (t as f64).sqrt());
    Ok(IterationForecast::new(state.n(), t, alpha))
}

/// `(n - 2) ceil(sqrt(2^{n-3})) + 1`, the cap on consecutive amplification
/// steps before the sufficient condition is restored.
pub fn rpid_bound_for(n: usize) -> u64 {
    if n < 4 {
        return 0;
    }
    let root = 2f64.powf((n as f64 - 3.0) / 2.0).ceil() as u64;
    (n as u64 - 2) * root + 1
}

/// Bound on the amplification steps still needed from `state`: zero when
/// the smallest pair already satisfies the condition.
pub fn rpid_bound(state: &ClassifiedState) -> u64 {
    let Ok((lo, hi)) = find_min_pair(state) else {
        return 0;
    };
    match sufficient_condition(state, lo, hi) {
        Ok(c) if c < 0.0 => rpid_bound_for(state.n()),
        _ => 0,
    }
}
