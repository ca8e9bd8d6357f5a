//! Coefficient classes and the closed-form class-level updates.
//!
//! A [`ClassifiedState`] holds one real non-negative amplitude per class of
//! basis vectors. Since every operator used by the planner is built from `D`
//! (which only sees the sum of all amplitudes) and phase shifts that act on
//! whole class halves, the `2^n`-dimensional state never has to be formed:
//! the updates below work on `O(#classes)` numbers.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::target::{ClassStructure, GeneralClassSpec, SymmetricTarget, Target};

/// Two class values are treated as one class when they differ by at most
/// this much, relative to `max(1, value)`.
pub const MERGE_TOLERANCE: f64 = 1e-9;

/// Tolerance on `sum mult * value^2 == 1` for classified states.
pub const CLASS_NORM_TOLERANCE: f64 = 1e-9;

pub fn values_match(a: f64, b: f64) -> bool {
    (a - b).abs() <= MERGE_TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

/// Identifier of a class: the smallest label it contains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassId(pub usize);

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientClass {
    pub value: f64,
    /// Number of basis vectors in the class; always even.
    pub multiplicity: u64,
    /// Sorted labels of the structure that make up this class.
    pub labels: Vec<usize>,
}

impl CoefficientClass {
    pub fn new(value: f64, multiplicity: u64, mut labels: Vec<usize>) -> Self {
        labels.sort_unstable();
        CoefficientClass {
            value,
            multiplicity,
            labels,
        }
    }

    pub fn id(&self) -> ClassId {
        ClassId(self.labels[0])
    }
}

/// Distinct coefficient values of a real non-negative state, with their
/// multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifiedState {
    n: usize,
    classes: Vec<CoefficientClass>,
}

impl ClassifiedState {
    /// Builds a state from explicit classes, merging equal values.
    pub fn new(n: usize, classes: Vec<CoefficientClass>) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewQubits(n));
        }
        if n > crate::target::MAX_QUBITS {
            return Err(Error::TooManyQubits(n));
        }
        if classes.is_empty() {
            return Err(Error::InvalidClasses("no classes".into()));
        }
        let mut seen = std::collections::HashSet::new();
        let mut total = 0u64;
        for class in &classes {
            if class.labels.is_empty() {
                return Err(Error::InvalidClasses("class without labels".into()));
            }
            if class.multiplicity == 0 || class.multiplicity % 2 != 0 {
                return Err(Error::InvalidClasses(format!(
                    "class {} has multiplicity {}; must be even and positive",
                    class.id(),
                    class.multiplicity
                )));
            }
            if !(class.value >= 0.0 && class.value.is_finite()) {
                return Err(Error::InvalidClasses(format!(
                    "class {} has value {}; must be finite and non-negative",
                    class.id(),
                    class.value
                )));
            }
            for &label in &class.labels {
                if !seen.insert(label) {
                    return Err(Error::InvalidClasses(format!(
                        "label {label} appears in two classes"
                    )));
                }
            }
            total += class.multiplicity;
        }
        if total != 1u64 << n {
            return Err(Error::InvalidClasses(format!(
                "multiplicities sum to {total}, expected {}",
                1u64 << n
            )));
        }
        let state = ClassifiedState {
            n,
            classes: merge_equal(classes),
        };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > CLASS_NORM_TOLERANCE {
            return Err(Error::NotNormalized(norm));
        }
        Ok(state)
    }

    /// One value per label of `structure`.
    pub fn from_values(structure: &ClassStructure, values: &[f64]) -> Result<Self> {
        if values.len() != structure.labels() {
            return Err(Error::CoefficientCount {
                expected: structure.labels(),
                got: values.len(),
            });
        }
        let classes = values
            .iter()
            .enumerate()
            .map(|(k, &v)| CoefficientClass::new(v, structure.multiplicity(k), vec![k]))
            .collect();
        Self::new(structure.n(), classes)
    }

    /// The uniform superposition as a single class.
    pub fn uniform(structure: &ClassStructure) -> Self {
        ClassifiedState {
            n: structure.n(),
            classes: vec![CoefficientClass::new(
                0.5f64.powf(structure.n() as f64 / 2.0),
                structure.dim(),
                (0..structure.labels()).collect(),
            )],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[CoefficientClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn is_uniform(&self) -> bool {
        self.classes.len() == 1
    }

    pub fn class(&self, id: ClassId) -> Result<&CoefficientClass> {
        self.classes
            .iter()
            .find(|c| c.id() == id)
            .ok_or(Error::UnknownClass(id))
    }

    /// Class containing `label`.
    pub fn class_of_label(&self, label: usize) -> Option<&CoefficientClass> {
        self.classes.iter().find(|c| c.labels.contains(&label))
    }

    /// Sum of all `2^n` coefficients.
    pub fn coefficient_sum(&self) -> f64 {
        self.classes
            .iter()
            .map(|c| c.multiplicity as f64 * c.value)
            .sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.classes
            .iter()
            .map(|c| c.multiplicity as f64 * c.value * c.value)
            .sum()
    }

    /// Value of every label, indexed by label.
    pub fn label_values(&self) -> Vec<f64> {
        let labels = self.classes.iter().map(|c| c.labels.len()).sum();
        let mut out = vec![f64::NAN; labels];
        for class in &self.classes {
            for &l in &class.labels {
                out[l] = class.value;
            }
        }
        out
    }

    fn half_dim(&self) -> f64 {
        2f64.powi(self.n as i32 - 1)
    }
}

/// Groups basis vectors of a real non-negative symmetric target by value.
pub fn classify_symmetric(target: &SymmetricTarget) -> Result<ClassifiedState> {
    classify_coeffs(target.structure(), target.coeffs())
}

pub fn classify_general(spec: &GeneralClassSpec) -> Result<ClassifiedState> {
    classify_coeffs(spec.structure(), spec.coeffs())
}

pub fn classify(target: &Target) -> Result<ClassifiedState> {
    classify_coeffs(target.structure(), target.coeffs())
}

fn classify_coeffs(structure: &ClassStructure, coeffs: &[Complex64]) -> Result<ClassifiedState> {
    let mut values = Vec::with_capacity(coeffs.len());
    for (k, c) in coeffs.iter().enumerate() {
        if c.im != 0.0 || c.re < 0.0 {
            return Err(Error::PreconditionViolated(format!(
                "coefficient {k} is {c}; canonicalize phases first"
            )));
        }
        values.push(c.re);
    }
    let norm: f64 = values
        .iter()
        .enumerate()
        .map(|(k, v)| structure.multiplicity(k) as f64 * v * v)
        .sum();
    if (norm - 1.0).abs() > crate::target::NORM_TOLERANCE {
        return Err(Error::NotNormalized(norm));
    }
    ClassifiedState::from_values(structure, &values)
}

/// Merges classes whose values match, preserving the squared norm.
fn merge_equal(mut classes: Vec<CoefficientClass>) -> Vec<CoefficientClass> {
    classes.sort_by(|a, b| a.value.total_cmp(&b.value));
    let mut out: Vec<CoefficientClass> = Vec::with_capacity(classes.len());
    let mut anchor = f64::NAN;
    for class in classes {
        match out.last_mut() {
            Some(last) if values_match(anchor, class.value) => {
                let weight = last.multiplicity as f64 * last.value * last.value
                    + class.multiplicity as f64 * class.value * class.value;
                last.multiplicity += class.multiplicity;
                last.value = (weight / last.multiplicity as f64).sqrt();
                last.labels.extend(class.labels);
                last.labels.sort_unstable();
            }
            _ => {
                anchor = class.value;
                out.push(class);
            }
        }
    }
    out.sort_by_key(|c| c.id());
    out
}

/// Result of an equal-weighting step at class level.
#[derive(Debug, Clone, PartialEq)]
pub struct RdrOutcome {
    pub state: ClassifiedState,
    /// Phase of the post-diffusion amplitude on the `+` half of `hi`, in `[0, 2pi)`.
    pub phi: f64,
    /// Labels whose amplitudes came out negative and need a pi shift.
    pub flipped: Vec<usize>,
}

/// Signed class values after `R~_theta D R_theta`, before any sign repair.
/// Returns `(values in class order, A_hi)`.
fn rdr_values(
    state: &ClassifiedState,
    lo: ClassId,
    hi: ClassId,
    theta: f64,
) -> Result<(Vec<f64>, Complex64)> {
    if lo == hi {
        return Err(Error::PreconditionViolated(format!(
            "equal-weighting needs two distinct classes, got {lo} twice"
        )));
    }
    let lo_class = state.class(lo)?;
    let hi_class = state.class(hi)?;
    let half = state.half_dim();
    let (a0, two_l) = (lo_class.value, lo_class.multiplicity as f64);
    let (a1, two_m) = (hi_class.value, hi_class.multiplicity as f64);
    let m = two_m / 2.0;
    let rest: f64 = state
        .classes
        .iter()
        .filter(|c| c.id() != lo && c.id() != hi)
        .map(|c| c.multiplicity as f64 * c.value)
        .sum();
    let cos = theta.cos();
    let shared = two_l * a0 + two_m * a1 * cos + rest;

    let a_hi = (Complex64::new(two_l * a0 + rest, 0.0)
        + (m - half) * a1 * Complex64::cis(theta)
        + m * a1 * Complex64::cis(-theta))
        / half;
    let values = state
        .classes
        .iter()
        .map(|c| {
            if c.id() == lo {
                ((two_l - half) * a0 + two_m * a1 * cos + rest) / half
            } else if c.id() == hi {
                a_hi.norm()
            } else {
                (shared - half * c.value) / half
            }
        })
        .collect();
    Ok((values, a_hi))
}

/// Applies `R~_theta D R_theta` where `R_theta` shifts the `+` half of `hi` by
/// `theta` and the `-` half by `-theta`, and `R~` removes the resulting phase.
pub fn apply_rdr_classes(
    state: &ClassifiedState,
    lo: ClassId,
    hi: ClassId,
    theta: f64,
) -> Result<RdrOutcome> {
    let (values, a_hi) = rdr_values(state, lo, hi, theta)?;
    let phi = if a_hi.norm() == 0.0 {
        0.0
    } else {
        a_hi.arg().rem_euclid(TAU)
    };
    let (state, flipped) = rebuild(state, &values);
    Ok(RdrOutcome {
        state,
        phi,
        flipped,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RpidOutcome {
    pub state: ClassifiedState,
    /// Labels that were negative after `D` (every class but the smallest).
    pub flipped: Vec<usize>,
}

/// Applies `D` followed by a pi shift on every class that went negative.
///
/// Only valid in the amplification regime: `S - 2^{n-1} a` must be positive
/// for the smallest class and negative for all others.
pub fn apply_rpid_classes(state: &ClassifiedState) -> Result<RpidOutcome> {
    if state.is_uniform() {
        return Err(Error::PreconditionViolated(
            "diffusion fixes the uniform state; nothing to amplify".into(),
        ));
    }
    let sum = state.coefficient_sum();
    let half = state.half_dim();
    let lo = state
        .classes
        .iter()
        .min_by(|a, b| a.value.total_cmp(&b.value))
        .map(|c| c.id())
        .expect("non-empty");
    let mut values = Vec::with_capacity(state.len());
    for class in &state.classes {
        let diffused = (sum - half * class.value) / half;
        let expected_positive = class.id() == lo;
        if (diffused > 0.0) != expected_positive {
            return Err(Error::PreconditionViolated(format!(
                "after diffusion class {} has value {diffused:e}; expected the sign pattern (+, -, -, ...)",
                class.id()
            )));
        }
        values.push(diffused);
    }
    let (state, flipped) = rebuild(state, &values);
    Ok(RpidOutcome { state, flipped })
}

/// `S - 2^{n-2} (a_lo + a_hi)`; non-negative means an equalizing angle exists.
pub fn sufficient_condition(state: &ClassifiedState, lo: ClassId, hi: ClassId) -> Result<f64> {
    let a0 = state.class(lo)?.value;
    let a1 = state.class(hi)?.value;
    Ok(state.coefficient_sum() - 2f64.powi(state.n as i32 - 2) * (a0 + a1))
}

fn rebuild(state: &ClassifiedState, signed: &[f64]) -> (ClassifiedState, Vec<usize>) {
    let mut flipped = Vec::new();
    let classes = state
        .classes
        .iter()
        .zip(signed)
        .map(|(c, &v)| {
            if v < 0.0 {
                flipped.extend_from_slice(&c.labels);
            }
            CoefficientClass::new(v.abs(), c.multiplicity, c.labels.clone())
        })
        .collect();
    flipped.sort_unstable();
    (
        ClassifiedState {
            n: state.n,
            classes: merge_equal(classes),
        },
        flipped,
    )
}
