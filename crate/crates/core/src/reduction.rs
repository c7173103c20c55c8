//! Reduction from Stable Consequence instances to Łukasiewicz consequence.
//!
//! An instance `(Φ_1, …, Φ_k; e_1, …, e_k)` over `X_1, …, X_n` becomes the
//! pair `(θ, φ)` with `e = max(2, e_1, …, e_k)`:
//!
//! ```text
//! θ = ⋀_t ((X_t^e ↔ ¬X_t) ∨ (X_t ↔ ¬ e·X_t))
//! φ = ⋁_i ((⊙_j φ_ij‡) → (X_1 ∨ ¬X_1)^(e_i + 1))
//! ```
//!
//! The models of `θ` are exactly the points of `{1/(e+1), e/(e+1)}^n`, and
//! at those points `φ_ij‡` takes value 1 or `e/(e+1)` according to whether
//! the boolean formula holds at the corresponding vertex of the cube.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_rational::Ratio;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::formula::{
    fold_nonempty, iff, implies, multiple, power, BoolFormula, Formula, LukFormula, VarId,
};
use crate::parse::parse_bool;
use crate::rational::Rational01;
use crate::semantics::{BoolAssignment, Valuation};

/// One formula set `Φ_i` with its deletion count `e_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    formulas: Vec<BoolFormula>,
    delete: usize,
}

impl Group {
    pub fn formulas(&self) -> &[BoolFormula] {
        &self.formulas
    }

    pub fn delete(&self) -> usize {
        self.delete
    }
}

/// A Stable Consequence instance over `X_1, …, X_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableInstance {
    n: u32,
    groups: Vec<Group>,
}

impl StableInstance {
    pub fn new(n: u32, groups: Vec<(Vec<BoolFormula>, usize)>) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidInstance(msg));
        if n == 0 {
            return invalid("n must be at least 1".into());
        }
        if groups.is_empty() {
            return invalid("at least one group is required".into());
        }
        let mut out = Vec::with_capacity(groups.len());
        for (i, (formulas, delete)) in groups.into_iter().enumerate() {
            let gi = i + 1;
            if formulas.is_empty() {
                return invalid(format!("group {gi} is empty"));
            }
            if delete >= formulas.len() {
                return invalid(format!(
                    "group {gi}: delete count {delete} must be below its size {}",
                    formulas.len()
                ));
            }
            let mut seen = HashSet::new();
            for f in &formulas {
                if !seen.insert(f) {
                    return invalid(format!("group {gi}: formula {f} occurs twice"));
                }
                if let Some(v) = f.vars().into_iter().find(|v| v.index() > n) {
                    return invalid(format!("group {gi}: variable {v} exceeds n = {n}"));
                }
            }
            out.push(Group { formulas, delete });
        }
        Ok(Self { n, groups: out })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    /// Variables that occur in some formula.
    pub fn used_vars(&self) -> BTreeSet<VarId> {
        self.all_formulas().flat_map(|f| f.vars()).collect()
    }

    pub fn all_formulas(&self) -> impl Iterator<Item = &BoolFormula> {
        self.groups.iter().flat_map(|g| g.formulas.iter())
    }

    /// Total symbol count of all formulas in the unary-bar alphabet.
    pub fn length(&self) -> u64 {
        self.all_formulas()
            .map(|f| f.length().paper_symbol_count)
            .sum()
    }

    /// `max(2, e_1, …, e_k)`.
    pub fn lift_parameter(&self) -> u64 {
        self.groups
            .iter()
            .map(|g| g.delete as u64)
            .max()
            .unwrap_or(0)
            .max(2)
    }

    /// Renumbers the used variables to `X_1, …, X_m` in increasing order.
    /// The map is `None` when no variable changes index.
    pub fn normalized(&self) -> (StableInstance, Option<BTreeMap<VarId, VarId>>) {
        let used = self.used_vars();
        let map: BTreeMap<VarId, VarId> = used
            .iter()
            .enumerate()
            .map(|(i, v)| (*v, VarId::new(i as u32 + 1).expect("nonzero")))
            .collect();
        let m = map.len() as u32;
        if map.iter().all(|(a, b)| a == b) {
            let inst = StableInstance {
                n: m,
                groups: self.groups.clone(),
            };
            return (inst, None);
        }
        let rename = |v: VarId| map[&v];
        let groups = self
            .groups
            .iter()
            .map(|g| Group {
                formulas: g.formulas.iter().map(|f| f.map_vars(&rename)).collect(),
                delete: g.delete,
            })
            .collect();
        (StableInstance { n: m, groups }, Some(map))
    }

    pub fn to_file(&self) -> InstanceFile {
        InstanceFile {
            n: self.n,
            groups: self
                .groups
                .iter()
                .map(|g| GroupFile {
                    formulas: g.formulas.iter().map(ToString::to_string).collect(),
                    delete: g.delete,
                })
                .collect(),
        }
    }
}

/// JSON form of an instance:
/// `{"n": 2, "groups": [{"formulas": ["X1", "~X1"], "delete": 0}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: u32,
    pub groups: Vec<GroupFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub formulas: Vec<String>,
    pub delete: usize,
}

impl InstanceFile {
    pub fn to_instance(&self) -> Result<StableInstance> {
        let groups = self
            .groups
            .iter()
            .map(|g| {
                let formulas = g
                    .formulas
                    .iter()
                    .map(|s| parse_bool(s))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                Ok((formulas, g.delete))
            })
            .collect::<Result<Vec<_>>>()?;
        StableInstance::new(self.n, groups)
    }
}

/// Negation normal form: De Morgan and double-negation elimination.
pub fn nnf(formula: &BoolFormula) -> BoolFormula {
    push_negations(formula, false)
}

fn push_negations(f: &BoolFormula, negated: bool) -> BoolFormula {
    match (f, negated) {
        (BoolFormula::Var(_), false) => f.clone(),
        (BoolFormula::Var(_), true) => BoolFormula::not(f.clone()),
        (BoolFormula::Not(a), _) => push_negations(a, !negated),
        (BoolFormula::And(a, b), false) => {
            BoolFormula::and(push_negations(a, false), push_negations(b, false))
        }
        (BoolFormula::And(a, b), true) => {
            BoolFormula::or(push_negations(a, true), push_negations(b, true))
        }
        (BoolFormula::Or(a, b), false) => {
            BoolFormula::or(push_negations(a, false), push_negations(b, false))
        }
        (BoolFormula::Or(a, b), true) => {
            BoolFormula::and(push_negations(a, true), push_negations(b, true))
        }
    }
}

/// Whether negation only ever applies directly to a variable.
pub fn is_nnf(formula: &BoolFormula) -> bool {
    match formula {
        BoolFormula::Var(_) => true,
        BoolFormula::Not(a) => matches!(**a, BoolFormula::Var(_)),
        BoolFormula::And(a, b) | BoolFormula::Or(a, b) => is_nnf(a) && is_nnf(b),
    }
}

/// `X ↦ ¬X ∨ (X ⊕ X)`.
pub fn positive_literal(v: VarId) -> LukFormula {
    let x = LukFormula::Var(v);
    LukFormula::join(LukFormula::neg(x.clone()), LukFormula::oplus(x.clone(), x))
}

/// `¬X ↦ X ∨ ¬(X ⊙ X)`.
pub fn negative_literal(v: VarId) -> LukFormula {
    let x = LukFormula::Var(v);
    LukFormula::join(x.clone(), LukFormula::neg(LukFormula::otimes(x.clone(), x)))
}

/// Literal-wise translation of the negation normal form into Łukasiewicz logic.
pub fn ddagger(formula: &BoolFormula) -> LukFormula {
    translate_nnf(&nnf(formula))
}

fn translate_nnf(f: &BoolFormula) -> LukFormula {
    match f {
        BoolFormula::Var(v) => positive_literal(*v),
        BoolFormula::Not(a) => match **a {
            BoolFormula::Var(v) => negative_literal(v),
            _ => unreachable!("input is in negation normal form"),
        },
        BoolFormula::And(a, b) => LukFormula::meet(translate_nnf(a), translate_nnf(b)),
        BoolFormula::Or(a, b) => LukFormula::join(translate_nnf(a), translate_nnf(b)),
    }
}

/// The two grid values `1/(e+1)` and `e/(e+1)`.
pub fn grid_values(e: u64) -> Result<[Rational01; 2]> {
    if e < 2 {
        return Err(Error::LiftParameter(e));
    }
    Ok([Rational01::ratio(1, e + 1), Rational01::ratio(e, e + 1)])
}

/// A vertex of `{0,1}^n` moved inward by `1/(e+1)` along every axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedPoint {
    e: u64,
    coordinates: Vec<Rational01>,
}

impl LiftedPoint {
    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn coordinates(&self) -> &[Rational01] {
        &self.coordinates
    }

    pub fn to_valuation(&self) -> Valuation {
        Valuation::from_point(&self.coordinates)
    }
}

pub fn lift_point(w: &BoolAssignment, e: u64) -> Result<LiftedPoint> {
    let [low, high] = grid_values(e)?;
    let coordinates = w
        .values()
        .iter()
        .map(|&b| if b { high.clone() } else { low.clone() })
        .collect();
    Ok(LiftedPoint { e, coordinates })
}

/// `⋀_{t=1..n} ((X_t^e ↔ ¬X_t) ∨ (X_t ↔ ¬ e·X_t))`, satisfied exactly on the grid.
pub fn constraint_formula(n: u32, e: u64) -> Result<LukFormula> {
    grid_values(e)?;
    if n == 0 {
        return Err(Error::InvalidInstance(
            "constraint formula needs n >= 1".into(),
        ));
    }
    let e32 = u32::try_from(e).map_err(|_| Error::LiftParameter(e))?;
    let mut conjuncts = Vec::with_capacity(n as usize);
    for t in 1..=n {
        let x = LukFormula::var(t);
        let upper = iff(power(&x, e32)?, LukFormula::neg(x.clone()));
        let lower = iff(x.clone(), LukFormula::neg(multiple(e32, &x)?));
        conjuncts.push(LukFormula::join(upper, lower));
    }
    Ok(fold_nonempty(conjuncts, LukFormula::meet).expect("n >= 1"))
}

/// `(⊙_j φ_j‡) → (X_1 ∨ ¬X_1)^(d+1)` for one formula set with deletion count `d`.
pub fn group_formula(formulas: &[BoolFormula], delete: usize) -> Result<LukFormula> {
    let product = fold_nonempty(formulas.iter().map(ddagger), LukFormula::otimes)
        .ok_or_else(|| Error::InvalidInstance("empty formula set".into()))?;
    let x1 = LukFormula::var(1);
    let excluded_middle = LukFormula::join(x1.clone(), LukFormula::neg(x1));
    let exponent = u32::try_from(delete + 1)
        .map_err(|_| Error::InvalidInstance("delete count too large".into()))?;
    Ok(implies(product, power(&excluded_middle, exponent)?))
}

/// Connective combining the per-group implications in the consequent.
///
/// At a grid point the implication for group `i` is 1 exactly when more than
/// `e_i` of its formulas fail there, so the instance is stable iff at every
/// grid point *some* group implication is 1: the groups must be joined.
/// Combining them with `Meet` asks instead that every group be stable on
/// its own, which is strictly stronger once there are two or more groups
/// (`{X1}`, `{¬X1}` with nothing deleted is stable, yet `(X1‡ → X1 ∨ ¬X1)`
/// is 2/3 at `X1 = 2/3`). `Meet` is kept for comparison only.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum GroupCombination {
    #[default]
    Join,
    Meet,
}

/// The consequent `⋁_i group_formula(Φ_i, e_i)`.
pub fn consequent(instance: &StableInstance) -> Result<LukFormula> {
    consequent_with(instance, GroupCombination::Join)
}

pub fn consequent_with(
    instance: &StableInstance,
    combination: GroupCombination,
) -> Result<LukFormula> {
    let parts = instance
        .groups
        .iter()
        .map(|g| group_formula(&g.formulas, g.delete))
        .collect::<Result<Vec<_>>>()?;
    let op = match combination {
        GroupCombination::Join => LukFormula::join,
        GroupCombination::Meet => LukFormula::meet,
    };
    Ok(fold_nonempty(parts, op).expect("instance has a group"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionStats {
    pub instance_length: u64,
    pub output_length: u64,
    pub n: u32,
    /// `output_length / (n · instance_length)`.
    #[serde(serialize_with = "ratio_as_string")]
    pub ratio: Ratio<u64>,
}

fn ratio_as_string<S: Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    pub theta: LukFormula,
    pub phi: LukFormula,
    pub e: u64,
    pub n: u32,
    /// Original-to-normalized variable map, when normalization renamed anything.
    pub renaming: Option<BTreeMap<VarId, VarId>>,
    pub stats: ReductionStats,
}

impl ReductionOutput {
    pub fn to_json(&self) -> ReductionJson {
        ReductionJson {
            e: self.e,
            n: self.n,
            theta: self.theta.to_string(),
            phi: self.phi.to_string(),
            renaming: self.renaming.as_ref().map(|m| {
                m.iter()
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .collect()
            }),
            stats: self.stats.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionJson {
    pub e: u64,
    pub n: u32,
    pub theta: String,
    pub phi: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub renaming: Option<Vec<(String, String)>>,
    pub stats: ReductionStats,
}

pub fn reduce(instance: &StableInstance) -> Result<ReductionOutput> {
    reduce_with(instance, GroupCombination::Join)
}

pub fn reduce_with(
    instance: &StableInstance,
    combination: GroupCombination,
) -> Result<ReductionOutput> {
    let (normal, renaming) = instance.normalized();
    let e = normal.lift_parameter();
    let theta = constraint_formula(normal.n, e)?;
    let phi = consequent_with(&normal, combination)?;

    let instance_length = normal.length();
    let output_length = theta.length().paper_symbol_count + phi.length().paper_symbol_count;
    let stats = ReductionStats {
        instance_length,
        output_length,
        n: normal.n,
        ratio: Ratio::new(output_length, u64::from(normal.n) * instance_length),
    };
    Ok(ReductionOutput {
        theta,
        phi,
        e,
        n: normal.n,
        renaming,
        stats,
    })
}
