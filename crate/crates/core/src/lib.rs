//! Reduction of the Stable Consequence problem on boolean formulas to the
//! consequence problem of infinite-valued Łukasiewicz logic, with exact
//! rational evaluators and brute-force deciders for both sides.

#![forbid(unsafe_code)]

pub mod decision;
pub mod error;
pub mod formula;
pub mod harness;
pub mod parse;
pub mod random;
pub mod rational;
pub mod reduction;
pub mod semantics;

pub use decision::{
    check_consequence_rho, coefficient_bound, estar, find_countermodel, stable_bruteforce, Budget,
    ConsequenceVerdict, EStarResult, StabilityOracle, StableVerdict,
};
pub use error::{Error, ParseError, Result};
pub use formula::{
    iff, implies, measure, multiple, power, BoolFormula, Formula, FormulaLength, LukFormula, VarId,
};
pub use parse::{parse_bool, parse_luk};
pub use rational::Rational01;
pub use reduction::{
    consequent, constraint_formula, ddagger, lift_point, nnf, reduce, reduce_with,
    GroupCombination, InstanceFile, LiftedPoint, ReductionOutput, StableInstance,
};
pub use semantics::{eval_bool, eval_luk, satisfies, BoolAssignment, Valuation};
