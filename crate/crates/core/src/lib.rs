//! Preparation of symmetric partially entangled states by selective phase
//! shifts and inversion about average.
//!
//! The pipeline is: [`target`] describes the state, [`planner`] reduces it to
//! the uniform superposition at the level of coefficient classes, the
//! reversed [`plan`] is lowered to elementary gates by [`circuit`], and
//! [`sim`] checks the result on a dense state vector.

pub mod circuit;
pub mod classes;
pub mod error;
pub mod plan;
pub mod planner;
pub mod sim;
pub mod target;
pub mod tracker;

pub use classes::{
    apply_rdr_classes, apply_rpid_classes, classify, sufficient_condition, ClassId,
    ClassifiedState, CoefficientClass,
};
pub use error::{Direction, Error, Result};
pub use plan::{read_plan, reverse_plan, write_plan, Plan, PlanStep, Primitive};
pub use planner::{
    find_min_pair, forecast_rpid, plan_build, plan_reduce, rpid_bound, solve_theta,
    IterationForecast,
};
pub use target::{ClassStructure, GeneralClassSpec, Half, SymmetricTarget, Target};
pub use tracker::SplitState;
