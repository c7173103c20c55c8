//! Seeded random generation of formulas and instances.

use rand::Rng;

use crate::formula::{BoolFormula, LukFormula};
use crate::reduction::StableInstance;

/// Random boolean formula over `X_1..X_n` with at most `max_connectives` connectives.
pub fn bool_formula<R: Rng + ?Sized>(rng: &mut R, n: u32, max_connectives: usize) -> BoolFormula {
    let size = rng.gen_range(0..=max_connectives);
    bool_formula_of_size(rng, n, size)
}

fn bool_formula_of_size<R: Rng + ?Sized>(rng: &mut R, n: u32, size: usize) -> BoolFormula {
    if size == 0 {
        return BoolFormula::var(rng.gen_range(1..=n));
    }
    match rng.gen_range(0..3) {
        0 => BoolFormula::not(bool_formula_of_size(rng, n, size - 1)),
        op => {
            let left = rng.gen_range(0..size);
            let a = bool_formula_of_size(rng, n, left);
            let b = bool_formula_of_size(rng, n, size - 1 - left);
            if op == 1 {
                BoolFormula::and(a, b)
            } else {
                BoolFormula::or(a, b)
            }
        }
    }
}

/// Random Łukasiewicz formula over `X_1..X_n` with at most `max_connectives` connectives.
pub fn luk_formula<R: Rng + ?Sized>(rng: &mut R, n: u32, max_connectives: usize) -> LukFormula {
    let size = rng.gen_range(0..=max_connectives);
    luk_formula_of_size(rng, n, size)
}

fn luk_formula_of_size<R: Rng + ?Sized>(rng: &mut R, n: u32, size: usize) -> LukFormula {
    if size == 0 {
        return LukFormula::var(rng.gen_range(1..=n));
    }
    let op = rng.gen_range(0..5);
    if op == 0 {
        return LukFormula::neg(luk_formula_of_size(rng, n, size - 1));
    }
    let left = rng.gen_range(0..size);
    let a = luk_formula_of_size(rng, n, left);
    let b = luk_formula_of_size(rng, n, size - 1 - left);
    match op {
        1 => LukFormula::oplus(a, b),
        2 => LukFormula::otimes(a, b),
        3 => LukFormula::meet(a, b),
        _ => LukFormula::join(a, b),
    }
}

/// Up to `count` structurally distinct random formulas (fewer if distinct
/// ones are hard to find at this size).
pub fn distinct_bool_formulas<R: Rng + ?Sized>(
    rng: &mut R,
    n: u32,
    max_connectives: usize,
    count: usize,
) -> Vec<BoolFormula> {
    let mut out: Vec<BoolFormula> = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count && attempts < 50 * count {
        attempts += 1;
        let f = bool_formula(rng, n, max_connectives);
        if !out.contains(&f) {
            out.push(f);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceLimits {
    /// Number of groups.
    pub max_k: usize,
    /// Formulas per group.
    pub max_u: usize,
    /// Variables.
    pub max_n: u32,
    /// Connectives per formula.
    pub max_size: usize,
}

impl Default for InstanceLimits {
    fn default() -> Self {
        Self {
            max_k: 3,
            max_u: 3,
            max_n: 3,
            max_size: 6,
        }
    }
}

pub fn instance<R: Rng + ?Sized>(rng: &mut R, limits: &InstanceLimits) -> StableInstance {
    let n = rng.gen_range(1..=limits.max_n.max(1));
    let k = rng.gen_range(1..=limits.max_k.max(1));
    let groups = (0..k)
        .map(|_| {
            let u = rng.gen_range(1..=limits.max_u.max(1));
            let formulas = distinct_bool_formulas(rng, n, limits.max_size, u);
            let delete = rng.gen_range(0..formulas.len());
            (formulas, delete)
        })
        .collect();
    StableInstance::new(n, groups).expect("generated instance is valid")
}
