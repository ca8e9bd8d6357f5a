//! Plans: ordered class-level operations that move between a target state
//! and the uniform superposition.

pub mod hexfloat;
mod text;

use std::f64::consts::PI;

pub use text::{parse_table_rows, read_plan, write_plan, write_trace};

use crate::classes::ClassifiedState;
use crate::error::Direction;
use crate::target::ClassStructure;
use crate::tracker::SplitState;

/// One step of a plan. Class references are label lists so that a step can
/// be lowered to gates without the class tracker.
#[derive(Debug, Clone, PartialEq)]
pub enum PlanStep {
    /// Equal-weighting of `lo` and `hi`: `R_theta`, `D`, `R~_phi`, where the
    /// half-phase shifts act on `hi`.
    RdrMerge {
        lo: Vec<usize>,
        hi: Vec<usize>,
        theta: f64,
        phi: f64,
    },
    /// One amplitude-amplification iteration: `D`, then pi on `flips`.
    RpiD { flips: Vec<usize> },
    /// Pi shift on labels left negative by the preceding merge.
    PiFlip { labels: Vec<usize> },
    /// Per-label phase shift on both halves.
    ClassPhases { phases: Vec<(usize, f64)> },
}

/// State-level operation a plan step expands to.
#[derive(Debug, Clone, PartialEq)]
pub enum Primitive {
    /// `+angle` on the `+` half and `-angle` on the `-` half of each label.
    HalfPhase { labels: Vec<usize>, angle: f64 },
    /// Same phase on both halves of each listed label.
    ClassPhase { phases: Vec<(usize, f64)> },
    /// Inversion about average on the main register.
    Diffuse,
}

impl PlanStep {
    /// The step with every phase angle negated; `D` is its own inverse.
    pub fn inverted_angles(&self) -> PlanStep {
        match self {
            PlanStep::RdrMerge { lo, hi, theta, phi } => PlanStep::RdrMerge {
                lo: lo.clone(),
                hi: hi.clone(),
                theta: -theta,
                phi: -phi,
            },
            PlanStep::ClassPhases { phases } => PlanStep::ClassPhases {
                phases: phases.iter().map(|&(l, a)| (l, -a)).collect(),
            },
            other => other.clone(),
        }
    }

    /// Primitives in application order. Build-direction steps run the
    /// reduce-direction sequence backwards with their (already negated)
    /// angles.
    pub fn primitives(&self, direction: Direction) -> Vec<Primitive> {
        let pi = match direction {
            Direction::Reduce => PI,
            Direction::Build => -PI,
        };
        let flip = |labels: &[usize]| Primitive::ClassPhase {
            phases: labels.iter().map(|&l| (l, pi)).collect(),
        };
        let mut ops = match self {
            PlanStep::RdrMerge { hi, theta, phi, .. } => vec![
                Primitive::HalfPhase {
                    labels: hi.clone(),
                    angle: *theta,
                },
                Primitive::Diffuse,
                Primitive::HalfPhase {
                    labels: hi.clone(),
                    angle: -phi,
                },
            ],
            PlanStep::RpiD { flips } => vec![Primitive::Diffuse, flip(flips)],
            PlanStep::PiFlip { labels } => vec![flip(labels)],
            PlanStep::ClassPhases { phases } => vec![Primitive::ClassPhase {
                phases: phases.clone(),
            }],
        };
        if direction == Direction::Build {
            ops.reverse();
        }
        ops
    }

    pub fn kind(&self) -> &'static str {
        match self {
            PlanStep::RdrMerge { .. } => "rdr",
            PlanStep::RpiD { .. } => "rpid",
            PlanStep::PiFlip { .. } => "piflip",
            PlanStep::ClassPhases { .. } => "phases",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Plan {
    pub(crate) structure: ClassStructure,
    pub(crate) direction: Direction,
    pub(crate) steps: Vec<PlanStep>,
    /// Class snapshots at step boundaries, `steps.len() + 1` entries, or
    /// empty for plans read back from text.
    pub(crate) trace: Vec<ClassifiedState>,
}

impl Plan {
    pub fn new(structure: ClassStructure, direction: Direction, steps: Vec<PlanStep>) -> Self {
        Plan {
            structure,
            direction,
            steps,
            trace: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.structure.n()
    }

    pub fn structure(&self) -> &ClassStructure {
        &self.structure
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn steps(&self) -> &[PlanStep] {
        &self.steps
    }

    pub fn trace(&self) -> &[ClassifiedState] {
        &self.trace
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn primitives(&self) -> impl Iterator<Item = Primitive> + '_ {
        self.steps
            .iter()
            .flat_map(move |s| s.primitives(self.direction))
    }

    pub fn apply(&self, state: &mut SplitState) {
        for p in self.primitives() {
            state.apply(&p);
        }
    }

    pub fn rdr_merges(&self) -> usize {
        self.count(|s| matches!(s, PlanStep::RdrMerge { .. }))
    }

    pub fn rpid_steps(&self) -> usize {
        self.count(|s| matches!(s, PlanStep::RpiD { .. }))
    }

    /// Lengths of the maximal runs of consecutive amplification steps.
    pub fn rpid_runs(&self) -> Vec<usize> {
        let mut runs = Vec::new();
        let mut current = 0;
        for step in &self.steps {
            if matches!(step, PlanStep::RpiD { .. }) {
                current += 1;
            } else if current > 0 {
                runs.push(current);
                current = 0;
            }
        }
        if current > 0 {
            runs.push(current);
        }
        runs
    }

    fn count(&self, pred: impl Fn(&PlanStep) -> bool) -> usize {
        self.steps.iter().filter(|s| pred(s)).count()
    }
}

/// Inverse plan: steps in reverse order with negated angles.
///
/// Reversing a reduce plan gives the build plan and vice versa.
pub fn reverse_plan(plan: &Plan) -> Plan {
    Plan {
        structure: plan.structure.clone(),
        direction: plan.direction.reversed(),
        steps: plan
            .steps
            .iter()
            .rev()
            .map(PlanStep::inverted_angles)
            .collect(),
        trace: plan.trace.iter().rev().cloned().collect(),
    }
}
