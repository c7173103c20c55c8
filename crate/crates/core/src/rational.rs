use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Exact rational number in `[0, 1]`, kept in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational01(BigRational);

impl Rational01 {
    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    /// `numer / denom`; fails when the denominator is zero or the value leaves `[0,1]`.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, Error> {
        let (numer, denom) = (numer.into(), denom.into());
        if denom.is_zero() {
            return Err(Error::RationalLiteral(format!("{numer}/0")));
        }
        Self::try_from(BigRational::new(numer, denom))
    }

    /// Convenience for small literals; panics if the value is not in `[0,1]`.
    pub fn ratio(numer: u64, denom: u64) -> Self {
        Self::new(numer, denom).expect("rational literal outside [0,1]")
    }

    pub fn from_scaled(numer: BigUint, denom: BigUint) -> Self {
        Self::new(BigInt::from(numer), BigInt::from(denom)).expect("scaled value outside [0,1]")
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `1 - self`.
    pub fn complement(&self) -> Self {
        Self(BigRational::one() - &self.0)
    }
}

impl TryFrom<BigRational> for Rational01 {
    type Error = Error;

    fn try_from(q: BigRational) -> Result<Self, Error> {
        if q < BigRational::zero() || q > BigRational::one() {
            return Err(Error::OutOfUnitInterval(q.to_string()));
        }
        Ok(Self(q))
    }
}

impl fmt::Display for Rational01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // BigRational prints integers without "/1"
        write!(f, "{}", self.0)
    }
}

impl FromStr for Rational01 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::RationalLiteral(s.to_string());
        let parse_int = |t: &str| -> Result<BigInt, Error> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse().map_err(|_| bad())
        };
        let s_trim = s.trim();
        match s_trim.split_once('/') {
            Some((p, q)) => {
                let q = parse_int(q.trim())?;
                if q.is_zero() {
                    return Err(bad());
                }
                Self::new(parse_int(p.trim())?, q)
            }
            None => Self::new(parse_int(s_trim)?, 1),
        }
    }
}

impl Serialize for Rational01 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational01 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
