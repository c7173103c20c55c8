//! Decision procedures: the brute-force Stable Consequence oracle, the grid
//! check for reduced pairs, bounded countermodel search for arbitrary pairs,
//! and the robustness threshold `e*`.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::{BoolFormula, Formula, LukFormula, VarId};
use crate::rational::Rational01;
use crate::reduction::{lift_point, reduce, ReductionOutput, StableInstance};
use crate::semantics::{eval_bool, eval_luk, BoolAssignment, Valuation};

/// Hard cap on the number of points or (deletion choice, assignment) pairs
/// an enumeration may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_steps: u64,
}

impl Budget {
    pub const DEFAULT_STEPS: u64 = 1 << 24;

    pub fn new(max_steps: u64) -> Self {
        Self { max_steps }
    }

    fn check(&self, needed: u128) -> Result<()> {
        if needed > u128::from(self.max_steps) {
            Err(Error::BudgetExceeded {
                needed,
                budget: self.max_steps,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::new(Self::DEFAULT_STEPS)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ConsequenceVerdict {
    /// `certified` is set only when the searched points contain every model of the antecedent.
    Consequence {
        certified: bool,
    },
    Countermodel {
        witness: Valuation,
    },
    InconclusiveAtBound {
        bound: u64,
    },
}

impl ConsequenceVerdict {
    pub fn is_consequence(&self) -> bool {
        matches!(self, ConsequenceVerdict::Consequence { .. })
    }

    pub fn witness(&self) -> Option<&Valuation> {
        match self {
            ConsequenceVerdict::Countermodel { witness } => Some(witness),
            _ => None,
        }
    }
}

/// Deleted formulas (0-based positions, one list per group) and an
/// assignment satisfying everything that survives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StableWitness {
    pub deleted: Vec<Vec<usize>>,
    pub assignment: BoolAssignment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StableVerdict {
    pub stable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<StableWitness>,
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn pow2(n: u32) -> u128 {
    1u128.checked_shl(n).unwrap_or(u128::MAX)
}

/// Truth table of `f` over `{0,1}^n` in lexicographic order.
fn truth_table(f: &BoolFormula, n: usize) -> Result<Vec<bool>> {
    (0..1u64 << n)
        .map(|i| eval_bool(f, &BoolAssignment::from_index(n, i)))
        .collect()
}

/// Decides the instance by trying every way of deleting exactly `e_i`
/// formulas from each group against every assignment. Surviving subsets are
/// enumerated in lexicographic order of their positions, and the witness is
/// the first (surviving subsets, assignment) pair found.
pub fn stable_bruteforce(instance: &StableInstance, budget: Budget) -> Result<StableVerdict> {
    let n = instance.n() as usize;
    let choices = instance
        .groups()
        .iter()
        .map(|g| binomial(g.formulas().len(), g.delete()))
        .fold(1u128, |a, b| a.saturating_mul(b));
    budget.check(choices.saturating_mul(pow2(n as u32)))?;

    let tables = instance
        .groups()
        .iter()
        .map(|g| {
            g.formulas()
                .iter()
                .map(|f| truth_table(f, n))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let per_group = instance.groups().iter().map(|g| {
        let u = g.formulas().len();
        (0..u).combinations(u - g.delete())
    });

    for kept in per_group.multi_cartesian_product() {
        let survivors: Vec<&Vec<bool>> = tables
            .iter()
            .zip(&kept)
            .flat_map(|(group, keep)| keep.iter().map(|&j| &group[j]))
            .collect();
        let hit = (0..1usize << n).find(|&w| survivors.iter().all(|t| t[w]));
        if let Some(w) = hit {
            let deleted = instance
                .groups()
                .iter()
                .zip(&kept)
                .map(|(g, keep)| {
                    (0..g.formulas().len())
                        .filter(|j| !keep.contains(j))
                        .collect()
                })
                .collect();
            return Ok(StableVerdict {
                stable: false,
                counterexample: Some(StableWitness {
                    deleted,
                    assignment: BoolAssignment::from_index(n, w as u64),
                }),
            });
        }
    }
    Ok(StableVerdict {
        stable: true,
        counterexample: None,
    })
}

/// Checks `θ ⊢ φ` for a reduced pair by evaluating at every grid point
/// `{1/(e+1), e/(e+1)}^n`. Those points are exactly the models of `θ`,
/// so a positive answer is certified.
pub fn check_consequence_rho(
    reduced: &ReductionOutput,
    budget: Budget,
) -> Result<ConsequenceVerdict> {
    let n = reduced.n as usize;
    budget.check(pow2(reduced.n))?;
    for i in 0..1u64 << n {
        let point = lift_point(&BoolAssignment::from_index(n, i), reduced.e)?;
        let x = point.to_valuation();
        if !eval_luk(&reduced.theta, &x)?.is_one() {
            return Err(Error::InvalidInstance(format!(
                "antecedent is not 1 at grid point {x}; not a reduction output"
            )));
        }
        if !eval_luk(&reduced.phi, &x)?.is_one() {
            return Ok(ConsequenceVerdict::Countermodel { witness: x });
        }
    }
    Ok(ConsequenceVerdict::Consequence { certified: true })
}

/// All rationals in `[0,1]` with denominator at most `max_denominator`, ascending.
pub fn farey_points(max_denominator: u64) -> Vec<Rational01> {
    let set: BTreeSet<Rational01> = (1..=max_denominator)
        .flat_map(|q| (0..=q).map(move |p| Rational01::ratio(p, q)))
        .collect();
    set.into_iter().collect()
}

/// Scans every point whose coordinates have denominator at most
/// `max_denominator`, in lexicographic order of ascending coordinates.
///
/// Sound but not complete: a miss only means no countermodel exists on
/// that grid.
pub fn find_countermodel(
    theta: &LukFormula,
    phi: &LukFormula,
    max_denominator: u64,
    budget: Budget,
) -> Result<ConsequenceVerdict> {
    if max_denominator == 0 {
        return Err(Error::InvalidInstance(
            "max denominator must be at least 1".into(),
        ));
    }
    let vars: Vec<VarId> = theta.vars().union(&phi.vars()).copied().collect();
    let axis = farey_points(max_denominator);
    let total = (axis.len() as u128)
        .checked_pow(vars.len() as u32)
        .unwrap_or(u128::MAX);
    budget.check(total)?;

    let mut digits = vec![0usize; vars.len()];
    loop {
        let x: Valuation = vars
            .iter()
            .zip(&digits)
            .map(|(v, &d)| (*v, axis[d].clone()))
            .collect();
        if eval_luk(theta, &x)?.is_one() && !eval_luk(phi, &x)?.is_one() {
            return Ok(ConsequenceVerdict::Countermodel { witness: x });
        }
        // odometer, last variable fastest
        let Some(pos) = digits.iter().rposition(|&d| d + 1 < axis.len()) else {
            break;
        };
        digits[pos] += 1;
        digits[pos + 1..].iter_mut().for_each(|d| *d = 0);
    }
    Ok(ConsequenceVerdict::InconclusiveAtBound {
        bound: max_denominator,
    })
}

/// Total number of connectives in both formulas. Bounds the coefficients of
/// the linear pieces of both McNaughton functions.
pub fn coefficient_bound(theta: &LukFormula, phi: &LukFormula) -> u64 {
    (theta.connective_count() + phi.connective_count()) as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityOracle {
    /// Reduce, then run the grid consequence check.
    Reduction,
    BruteForce,
}

pub fn is_stable(
    instance: &StableInstance,
    oracle: StabilityOracle,
    budget: Budget,
) -> Result<bool> {
    match oracle {
        StabilityOracle::Reduction => {
            Ok(check_consequence_rho(&reduce(instance)?, budget)?.is_consequence())
        }
        StabilityOracle::BruteForce => Ok(stable_bruteforce(instance, budget)?.stable),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EStarResult {
    /// `None` when the conclusion does not follow even with nothing deleted.
    pub e_star: Option<usize>,
    pub card_nabla: usize,
    pub checks_performed: usize,
}

impl EStarResult {
    pub fn no_entailment(&self) -> bool {
        self.e_star.is_none()
    }
}

fn dedup(formulas: impl IntoIterator<Item = BoolFormula>) -> Vec<BoolFormula> {
    let mut out: Vec<BoolFormula> = Vec::new();
    for f in formulas {
        if !out.contains(&f) {
            out.push(f);
        }
    }
    out
}

/// Builds `J_e = (Δ ∪ {¬ω}, ∇; 0, e)`.
pub fn robustness_instance(
    delta: &[BoolFormula],
    nabla: &[BoolFormula],
    omega: &BoolFormula,
    e: usize,
) -> Result<StableInstance> {
    let first = dedup(
        delta
            .iter()
            .cloned()
            .chain([BoolFormula::not(omega.clone())]),
    );
    let second = dedup(nabla.iter().cloned());
    let n = first
        .iter()
        .chain(&second)
        .flat_map(|f| f.vars())
        .map(VarId::index)
        .max()
        .unwrap_or(1);
    StableInstance::new(n, vec![(first, 0), (second, e)])
}

/// Largest `e` such that `ω` still follows from `Δ` and whatever is left of
/// `∇` after deleting any `e` of its members, found by binary search over
/// `0..card(∇)`. Relies on stability being downward closed in `e`.
pub fn estar(
    delta: &[BoolFormula],
    nabla: &[BoolFormula],
    omega: &BoolFormula,
    oracle: StabilityOracle,
    budget: Budget,
) -> Result<EStarResult> {
    let card = dedup(nabla.iter().cloned()).len();
    if card == 0 {
        return Err(Error::InvalidInstance(
            "the dubious set must be nonempty".into(),
        ));
    }
    let mut checks = 0;
    let mut stable_at = |e: usize| -> Result<bool> {
        checks += 1;
        is_stable(
            &robustness_instance(delta, nabla, omega, e)?,
            oracle,
            budget,
        )
    };

    if !stable_at(0)? {
        return Ok(EStarResult {
            e_star: None,
            card_nabla: card,
            checks_performed: checks,
        });
    }
    let (mut lo, mut hi) = (0usize, card - 1);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if stable_at(mid)? {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(EStarResult {
        e_star: Some(lo),
        card_nabla: card,
        checks_performed: checks,
    })
}
