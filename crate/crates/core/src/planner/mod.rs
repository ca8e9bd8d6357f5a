//! Class-level planning of the target-to-uniform reduction.
//!
//! The loop repeatedly takes the two smallest classes. If
//! `S - 2^{n-2}(a_lo + a_hi) >= 0` an equal-weighting step with a solved
//! angle merges them; otherwise amplification steps (`D` plus pi shifts) run
//! until the condition holds. The build plan is the exact reverse.

mod forecast;

pub use forecast::{forecast_rpid, rpid_bound, rpid_bound_for, IterationForecast};

use crate::classes::{
    apply_rdr_classes, apply_rpid_classes, classify, sufficient_condition, values_match, ClassId,
    ClassifiedState,
};
use crate::error::{Direction, Error, Result};
use crate::plan::{reverse_plan, Plan, PlanStep};
use crate::target::Target;

/// Relative slack on the sufficient condition before it counts as violated.
const CONDITION_SLACK: f64 = 1e-12;

/// `ceil(4 n 2^{n/2})`, the default cap on amplification steps per plan.
pub fn default_max_rpid(n: usize) -> u64 {
    (4.0 * n as f64 * 2f64.powf(n as f64 / 2.0)).ceil() as u64
}

/// Smallest and second-smallest class; ties go to the smaller id.
pub fn find_min_pair(state: &ClassifiedState) -> Result<(ClassId, ClassId)> {
    if state.is_uniform() {
        return Err(Error::AlreadyUniform);
    }
    let mut order: Vec<_> = state.classes().iter().collect();
    order.sort_by(|a, b| a.value.total_cmp(&b.value).then(a.id().cmp(&b.id())));
    Ok((order[0].id(), order[1].id()))
}

fn condition_holds(state: &ClassifiedState, lo: ClassId, hi: ClassId) -> Result<(bool, f64)> {
    let cond = sufficient_condition(state, lo, hi)?;
    let scale = 2f64.powi(state.n() as i32 - 2) * (state.class(lo)?.value + state.class(hi)?.value);
    Ok((cond >= -CONDITION_SLACK * scale, cond))
}

struct PairTerms {
    a0: f64,
    a1: f64,
    two_l: f64,
    two_m: f64,
    rest: f64,
    quarter: f64,
}

fn pair_terms(state: &ClassifiedState, lo: ClassId, hi: ClassId) -> Result<PairTerms> {
    let lo_c = state.class(lo)?;
    let hi_c = state.class(hi)?;
    let rest = state
        .classes()
        .iter()
        .filter(|c| c.id() != lo && c.id() != hi)
        .map(|c| c.multiplicity as f64 * c.value)
        .sum();
    Ok(PairTerms {
        a0: lo_c.value,
        a1: hi_c.value,
        two_l: lo_c.multiplicity as f64,
        two_m: hi_c.multiplicity as f64,
        rest,
        quarter: 2f64.powi(state.n() as i32 - 2),
    })
}

/// `f(theta) = 2^{n-2} (A_lo^2 - |A_hi|^2)` for the equal-weighting step.
pub fn merge_residual(
    state: &ClassifiedState,
    lo: ClassId,
    hi: ClassId,
    theta: f64,
) -> Result<f64> {
    let t = pair_terms(state, lo, hi)?;
    let c = theta.cos();
    Ok(
        (t.two_l * t.a0 + t.two_m * t.a1 * c + t.rest) * (t.a1 * c - t.a0)
            - t.quarter * (t.a1 * t.a1 - t.a0 * t.a0),
    )
}

/// Angle in `[0, pi/2)` that equalizes `lo` and `hi` under the
/// equal-weighting step.
///
/// `f` is quadratic in `cos(theta)` with a positive leading coefficient and a
/// negative value at `cos = 0`, so exactly one root is positive; the
/// sufficient condition places it in `(0, 1]`.
pub fn solve_theta(state: &ClassifiedState, lo: ClassId, hi: ClassId) -> Result<f64> {
    let t = pair_terms(state, lo, hi)?;
    if values_match(t.a0, t.a1) {
        return Ok(0.0);
    }
    if t.a0 > t.a1 {
        return Err(Error::PreconditionViolated(format!(
            "class {lo} ({}) must be smaller than class {hi} ({})",
            t.a0, t.a1
        )));
    }
    let (holds, condition) = condition_holds(state, lo, hi)?;
    if !holds {
        return Err(Error::NoRoot { condition });
    }
    let qa = t.two_m * t.a1 * t.a1;
    let qb = t.a1 * (t.two_l * t.a0 + t.rest - t.two_m * t.a0);
    let qc = -t.a0 * (t.two_l * t.a0 + t.rest) - t.quarter * (t.a1 * t.a1 - t.a0 * t.a0);
    let disc = (qb * qb - 4.0 * qa * qc).sqrt();
    let cos = if qb >= 0.0 {
        2.0 * qc / (-qb - disc)
    } else {
        (-qb + disc) / (2.0 * qa)
    };
    Ok(cos.clamp(0.0, 1.0).acos())
}

/// Runs the reduction loop on `target` and returns the reduce-direction plan
/// with its class trace.
///
/// `max_rpid` caps the total number of amplification steps; `None` uses
/// [`default_max_rpid`].
pub fn plan_reduce(target: &Target, max_rpid: Option<u64>) -> Result<Plan> {
    let structure = target.structure().clone();
    let budget = max_rpid.unwrap_or_else(|| default_max_rpid(structure.n()));
    let (canonical, phases) = target.phase_canonicalize();

    let mut state = classify(&canonical)?;
    let mut steps = Vec::new();
    let mut trace = vec![state.clone()];

    let cancel: Vec<_> = phases
        .iter()
        .enumerate()
        .filter(|(_, &p)| p != 0.0)
        .map(|(k, &p)| (k, -p))
        .collect();
    if !cancel.is_empty() {
        steps.push(PlanStep::ClassPhases { phases: cancel });
        trace.push(state.clone());
    }

    let mut rpid = 0u64;
    while !state.is_uniform() {
        let (lo, hi) = find_min_pair(&state)?;
        if condition_holds(&state, lo, hi)?.0 {
            let theta = solve_theta(&state, lo, hi)?;
            let lo_labels = state.class(lo)?.labels.clone();
            let hi_labels = state.class(hi)?.labels.clone();
            let out = apply_rdr_classes(&state, lo, hi, theta)?;
            let lo_after = out.state.class_of_label(lo_labels[0]).map(|c| c.id());
            let hi_after = out.state.class_of_label(hi_labels[0]).map(|c| c.id());
            if lo_after != hi_after {
                let v = |l: usize| out.state.class_of_label(l).map_or(f64::NAN, |c| c.value);
                return Err(Error::MergeFailed {
                    lo,
                    hi,
                    diff: (v(lo_labels[0]) - v(hi_labels[0])).abs(),
                });
            }
            steps.push(PlanStep::RdrMerge {
                lo: lo_labels,
                hi: hi_labels,
                theta,
                phi: out.phi,
            });
            state = out.state;
            trace.push(state.clone());
            if !out.flipped.is_empty() {
                steps.push(PlanStep::PiFlip {
                    labels: out.flipped,
                });
                trace.push(state.clone());
            }
        } else {
            rpid += 1;
            if rpid > budget {
                return Err(Error::IterationBudgetExceeded {
                    budget,
                    bound: rpid_bound_for(state.n()),
                });
            }
            let out = apply_rpid_classes(&state)?;
            steps.push(PlanStep::RpiD { flips: out.flipped });
            state = out.state;
            trace.push(state.clone());
        }
    }

    Ok(Plan {
        structure,
        direction: Direction::Reduce,
        steps,
        trace,
    })
}

/// Reduce plan followed by its reversal, the plan that prepares `target`
/// from the uniform superposition.
pub fn plan_build(target: &Target, max_rpid: Option<u64>) -> Result<Plan> {
    plan_reduce(target, max_rpid).map(|p| reverse_plan(&p))
}
