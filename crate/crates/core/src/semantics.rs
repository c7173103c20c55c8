//! Exact evaluation of formulas.
//!
//! Every Łukasiewicz connective maps the set `{0, 1/L, 2/L, …, 1}` into
//! itself, so a formula is evaluated on integer numerators over the common
//! denominator `L` of the valuation and only the final value is reduced.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::formula::{BoolFormula, LukFormula, VarId};
use crate::rational::Rational01;

/// Assignment of `[0,1]` values to a declared set of variables.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Valuation {
    values: BTreeMap<VarId, Rational01>,
}

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    /// `X_{i+1} ↦ point[i]`.
    pub fn from_point(point: &[Rational01]) -> Self {
        let values = point
            .iter()
            .enumerate()
            .map(|(i, q)| (VarId::new(i as u32 + 1).expect("nonzero"), q.clone()))
            .collect();
        Self { values }
    }

    pub fn set(&mut self, var: VarId, value: Rational01) {
        self.values.insert(var, value);
    }

    pub fn with(mut self, var: VarId, value: Rational01) -> Self {
        self.set(var, value);
        self
    }

    pub fn get(&self, var: VarId) -> Option<&Rational01> {
        self.values.get(&var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, &Rational01)> {
        self.values.iter().map(|(v, q)| (*v, q))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Least common denominator of all assigned values.
    pub fn common_denominator(&self) -> BigUint {
        self.values
            .values()
            .map(|q| q.denom().magnitude().clone())
            .fold(BigUint::one(), |acc, d| acc.lcm(&d))
    }
}

impl FromIterator<(VarId, Rational01)> for Valuation {
    fn from_iter<I: IntoIterator<Item = (VarId, Rational01)>>(iter: I) -> Self {
        Self {
            values: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(v, q)| format!("{v}={q}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.values.len()))?;
        for (v, q) in &self.values {
            map.serialize_entry(&v.to_string(), q)?;
        }
        map.end()
    }
}

/// Classical assignment to `X_1, …, X_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoolAssignment {
    values: Vec<bool>,
}

impl BoolAssignment {
    pub fn new(values: Vec<bool>) -> Self {
        Self { values }
    }

    /// The `index`-th assignment of `{0,1}^n` in lexicographic order
    /// (`X_1` is the most significant position).
    pub fn from_index(n: usize, index: u64) -> Self {
        let values = (0..n).map(|i| (index >> (n - 1 - i)) & 1 == 1).collect();
        Self { values }
    }

    pub fn get(&self, var: VarId) -> Option<bool> {
        self.values.get(var.index() as usize - 1).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// The same point viewed as a `{0,1}`-valued Łukasiewicz valuation.
    pub fn to_valuation(&self) -> Valuation {
        let point: Vec<Rational01> = self
            .values
            .iter()
            .map(|&b| {
                if b {
                    Rational01::one()
                } else {
                    Rational01::zero()
                }
            })
            .collect();
        Valuation::from_point(&point)
    }
}

impl Serialize for BoolAssignment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.values.len()))?;
        for (i, b) in self.values.iter().enumerate() {
            map.serialize_entry(&format!("X{}", i + 1), &u8::from(*b))?;
        }
        map.end()
    }
}

pub fn eval_bool(formula: &BoolFormula, w: &BoolAssignment) -> Result<bool> {
    Ok(match formula {
        BoolFormula::Var(v) => w.get(*v).ok_or(Error::UnboundVariable(*v))?,
        BoolFormula::Not(a) => !eval_bool(a, w)?,
        BoolFormula::And(a, b) => eval_bool(a, w)? && eval_bool(b, w)?,
        BoolFormula::Or(a, b) => eval_bool(a, w)? || eval_bool(b, w)?,
    })
}

/// Numerators over a fixed common denominator `top`.
trait Scaled: Clone + Ord {
    fn plus(&self, other: &Self) -> Self;
    /// `self - other`, with `self >= other`.
    fn minus(&self, other: &Self) -> Self;
    fn zero() -> Self;
}

impl Scaled for u128 {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn minus(&self, other: &Self) -> Self {
        self - other
    }

    fn zero() -> Self {
        0
    }
}

impl Scaled for BigUint {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn minus(&self, other: &Self) -> Self {
        self - other
    }

    fn zero() -> Self {
        Zero::zero()
    }
}

fn eval_scaled<T: Scaled>(f: &LukFormula, env: &BTreeMap<VarId, T>, top: &T) -> Result<T> {
    Ok(match f {
        LukFormula::Var(v) => env.get(v).cloned().ok_or(Error::UnboundVariable(*v))?,
        LukFormula::Neg(a) => top.minus(&eval_scaled(a, env, top)?),
        LukFormula::Oplus(a, b) => {
            let s = eval_scaled(a, env, top)?.plus(&eval_scaled(b, env, top)?);
            if s > *top {
                top.clone()
            } else {
                s
            }
        }
        LukFormula::Otimes(a, b) => {
            let s = eval_scaled(a, env, top)?.plus(&eval_scaled(b, env, top)?);
            if s > *top {
                s.minus(top)
            } else {
                T::zero()
            }
        }
        LukFormula::Meet(a, b) => eval_scaled(a, env, top)?.min(eval_scaled(b, env, top)?),
        LukFormula::Join(a, b) => eval_scaled(a, env, top)?.max(eval_scaled(b, env, top)?),
    })
}

/// Exact value of `formula` at the point described by `x`.
pub fn eval_luk(formula: &LukFormula, x: &Valuation) -> Result<Rational01> {
    let top = x.common_denominator();
    let scaled = x.iter().map(|(v, q)| {
        let factor = &top / q.denom().magnitude();
        (v, q.numer().magnitude() * factor)
    });

    // Sums of two numerators stay below 2^65, so u128 never overflows.
    if let Some(top_small) = top.to_u64() {
        let env: BTreeMap<VarId, u128> = scaled
            .map(|(v, n)| (v, u128::from(n.to_u64().expect("numerator <= denominator"))))
            .collect();
        let value = eval_scaled(formula, &env, &u128::from(top_small))?;
        Ok(Rational01::from_scaled(BigUint::from(value), top))
    } else {
        let env: BTreeMap<VarId, BigUint> = scaled.collect();
        let value = eval_scaled(formula, &env, &top)?;
        Ok(Rational01::from_scaled(value, top))
    }
}

/// Whether `x` gives every formula the value 1 exactly.
pub fn satisfies<'a>(
    x: &Valuation,
    formulas: impl IntoIterator<Item = &'a LukFormula>,
) -> Result<bool> {
    for f in formulas {
        if !eval_luk(f, x)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{iff, multiple, power};

    fn x(i: u32) -> LukFormula {
        LukFormula::var(i)
    }

    fn at(values: &[(u64, u64)]) -> Valuation {
        let point: Vec<Rational01> = values
            .iter()
            .map(|&(p, q)| Rational01::ratio(p, q))
            .collect();
        Valuation::from_point(&point)
    }

    #[test]
    fn oplus_truncates() {
        let f = LukFormula::oplus(x(1), x(1));
        assert_eq!(eval_luk(&f, &at(&[(2, 3)])).unwrap(), Rational01::one());
        assert_eq!(
            eval_luk(&f, &at(&[(1, 3)])).unwrap(),
            Rational01::ratio(2, 3)
        );
    }

    #[test]
    fn square_at_one_third_is_zero() {
        let f = power(&x(1), 2).unwrap();
        assert_eq!(eval_luk(&f, &at(&[(1, 3)])).unwrap(), Rational01::zero());
    }

    #[test]
    fn iff_is_one_minus_distance() {
        // (X2 ⊕ ¬X1) ⊙ (X1 ⊕ ¬X2) at (1/3, 2/3): min(1, 4/3) = 1 and min(1, 2/3) = 2/3,
        // so max(0, 1 + 2/3 - 1) = 2/3
        let f = iff(x(1), x(2));
        assert_eq!(
            eval_luk(&f, &at(&[(1, 3), (2, 3)])).unwrap(),
            Rational01::ratio(2, 3)
        );
    }

    #[test]
    fn mixed_denominators() {
        let f = LukFormula::oplus(x(1), x(2));
        assert_eq!(
            eval_luk(&f, &at(&[(1, 4), (1, 6)])).unwrap(),
            Rational01::ratio(5, 12)
        );
        let g = LukFormula::otimes(x(1), x(2));
        assert_eq!(
            eval_luk(&g, &at(&[(3, 4), (5, 6)])).unwrap(),
            Rational01::ratio(7, 12)
        );
    }

    #[test]
    fn huge_denominators_take_the_bigint_path() {
        let big = BigUint::from(u64::MAX) * BigUint::from(3u32);
        let q = Rational01::new(
            num_bigint::BigInt::from(big.clone() - 1u32),
            num_bigint::BigInt::from(big),
        )
        .unwrap();
        let v = Valuation::from_point(&[q.clone(), Rational01::ratio(1, 2)]);
        assert_eq!(
            eval_luk(&LukFormula::neg(LukFormula::neg(x(1))), &v).unwrap(),
            q
        );
        assert_eq!(
            eval_luk(&LukFormula::oplus(x(1), x(2)), &v).unwrap(),
            Rational01::one()
        );
    }

    #[test]
    fn unbound_variable_is_named() {
        let err = eval_luk(&x(3), &at(&[(1, 2)])).unwrap_err();
        assert_eq!(err, Error::UnboundVariable(VarId::new(3).unwrap()));
        let err = eval_bool(&BoolFormula::var(2), &BoolAssignment::new(vec![true])).unwrap_err();
        assert_eq!(err, Error::UnboundVariable(VarId::new(2).unwrap()));
    }

    #[test]
    fn bool_contradiction_and_tautology() {
        let p = BoolFormula::var(1);
        let contra = BoolFormula::and(p.clone(), BoolFormula::not(p.clone()));
        let taut = BoolFormula::or(p.clone(), BoolFormula::not(p));
        for v in [false, true] {
            let w = BoolAssignment::new(vec![v]);
            assert!(!eval_bool(&contra, &w).unwrap());
            assert!(eval_bool(&taut, &w).unwrap());
        }
    }

    #[test]
    fn satisfies_is_exact() {
        assert!(satisfies(&at(&[(1, 2)]), &[]).unwrap());
        assert!(satisfies(&at(&[(1, 1)]), &[x(1)]).unwrap());
        assert!(!satisfies(&at(&[(9999, 10000)]), &[x(1)]).unwrap());
    }

    #[test]
    fn closed_forms_of_iterates() {
        for e in 1..=6u32 {
            let p = power(&x(1), e).unwrap();
            let m = multiple(e, &x(1)).unwrap();
            for k in 0..=12u64 {
                let y = Rational01::ratio(k, 12);
                let v = Valuation::from_point(&[y]);
                // max(0, e·k/12 − e + 1) and min(1, e·k/12), in twelfths
                let e = u64::from(e);
                let pow_num = (e * k + 12).saturating_sub(12 * e);
                let mul_num = (e * k).min(12);
                assert_eq!(eval_luk(&p, &v).unwrap(), Rational01::ratio(pow_num, 12));
                assert_eq!(eval_luk(&m, &v).unwrap(), Rational01::ratio(mul_num, 12));
            }
        }
    }

    #[test]
    fn lexicographic_assignments() {
        assert_eq!(
            BoolAssignment::from_index(3, 0).values(),
            &[false, false, false]
        );
        assert_eq!(
            BoolAssignment::from_index(3, 1).values(),
            &[false, false, true]
        );
        assert_eq!(
            BoolAssignment::from_index(3, 4).values(),
            &[true, false, false]
        );
    }

    #[test]
    fn valuation_serializes_in_variable_order() {
        let v = Valuation::new()
            .with(VarId::new(10).unwrap(), Rational01::ratio(1, 2))
            .with(VarId::new(2).unwrap(), Rational01::ratio(2, 3));
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"X2":"2/3","X10":"1/2"}"#
        );
    }
}
