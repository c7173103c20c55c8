//! Test-only oracles, independent of the library's evaluation path.

#![allow(dead_code)]

use std::collections::BTreeMap;

use itertools::Itertools;
use lukstable::{BoolFormula, LukFormula, Valuation};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Direct recursion over the connective clauses on `BigRational`.
pub fn naive_eval(f: &LukFormula, x: &BTreeMap<u32, BigRational>) -> BigRational {
    let one = BigRational::one();
    let zero = BigRational::zero();
    match f {
        LukFormula::Var(v) => x[&v.index()].clone(),
        LukFormula::Neg(a) => &one - naive_eval(a, x),
        LukFormula::Oplus(a, b) => (naive_eval(a, x) + naive_eval(b, x)).min(one),
        LukFormula::Otimes(a, b) => (naive_eval(a, x) + naive_eval(b, x) - one).max(zero),
        LukFormula::Meet(a, b) => naive_eval(a, x).min(naive_eval(b, x)),
        LukFormula::Join(a, b) => naive_eval(a, x).max(naive_eval(b, x)),
    }
}

pub fn naive_point(v: &Valuation) -> BTreeMap<u32, BigRational> {
    v.iter()
        .map(|(k, q)| (k.index(), q.value().clone()))
        .collect()
}

pub fn naive_bool(f: &BoolFormula, w: &[bool]) -> bool {
    match f {
        BoolFormula::Var(v) => w[v.index() as usize - 1],
        BoolFormula::Not(a) => !naive_bool(a, w),
        BoolFormula::And(a, b) => naive_bool(a, w) && naive_bool(b, w),
        BoolFormula::Or(a, b) => naive_bool(a, w) || naive_bool(b, w),
    }
}

pub fn all_assignments(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0..n)
        .map(|_| [false, true])
        .multi_cartesian_product()
        .chain((n == 0).then(Vec::new))
}

/// Up-to-`d` deletion variant: some subset keeping at least `u - d`
/// formulas is satisfiable iff some assignment falsifies at most `d` of them.
pub fn unstable_up_to(formulas: &[BoolFormula], d: usize, n: usize) -> bool {
    all_assignments(n).any(|w| formulas.iter().filter(|f| !naive_bool(f, &w)).count() <= d)
}

/// Exact-`d` deletion variant by subset enumeration.
pub fn unstable_exact(formulas: &[BoolFormula], d: usize, n: usize) -> bool {
    (0..formulas.len())
        .combinations(formulas.len() - d)
        .any(|kept| all_assignments(n).any(|w| kept.iter().all(|&j| naive_bool(&formulas[j], &w))))
}
