//! Exact rational values for growth rates and densities.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number kept in lowest terms with a positive denominator.
///
/// Comparisons never go through floating point, so minima over candidate
/// fractions are exact even when the values are close to an irrational limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GrowthRate(Ratio<i128>);

impl GrowthRate {
    pub fn new(numer: i128, denom: i128) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidParameter("zero denominator".into()));
        }
        Ok(GrowthRate(Ratio::new(numer, denom)))
    }

    pub fn integer(value: i128) -> Self {
        GrowthRate(Ratio::from_integer(value))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        num_traits::CheckedAdd::checked_add(&self.0, &other.0).map(GrowthRate)
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        num_traits::CheckedSub::checked_sub(&self.0, &other.0).map(GrowthRate)
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        num_traits::CheckedMul::checked_mul(&self.0, &other.0).map(GrowthRate)
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        num_traits::CheckedDiv::checked_div(&self.0, &other.0).map(GrowthRate)
    }

    pub fn checked_pow(&self, exp: u32) -> Option<Self> {
        let mut acc = GrowthRate::integer(1);
        for _ in 0..exp {
            acc = acc.checked_mul(self)?;
        }
        Some(acc)
    }
}

impl fmt::Display for GrowthRate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for GrowthRate {
    type Err = Error;

    /// Accepts `n`, `n/d` and finite decimals such as `1.3`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("not a rational number: {s:?}"));
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: i128 = n.trim().parse().map_err(|_| bad())?;
            let d: i128 = d.trim().parse().map_err(|_| bad())?;
            return GrowthRate::new(n, d);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 30 {
                return Err(bad());
            }
            let negative = int.starts_with('-');
            let int: i128 = if int.is_empty() || int == "-" {
                0
            } else {
                int.parse().map_err(|_| bad())?
            };
            let scale = 10i128.checked_pow(frac.len() as u32).ok_or_else(bad)?;
            let frac: i128 = frac.parse().map_err(|_| bad())?;
            let mag = int
                .abs()
                .checked_mul(scale)
                .and_then(|v| v.checked_add(frac))
                .ok_or_else(bad)?;
            return GrowthRate::new(if negative { -mag } else { mag }, scale);
        }
        Ok(GrowthRate::integer(s.parse().map_err(|_| bad())?))
    }
}

impl Serialize for GrowthRate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GrowthRate {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        let r = GrowthRate::new(86, 20).unwrap();
        assert_eq!((r.numer(), r.denom()), (43, 10));
        let r = GrowthRate::new(3, -6).unwrap();
        assert_eq!((r.numer(), r.denom()), (-1, 2));
        assert_eq!(GrowthRate::new(0, 5).unwrap().to_string(), "0/1");
    }

    #[test]
    fn zero_denominator_is_rejected() {
        assert!(GrowthRate::new(1, 0).is_err());
    }

    #[test]
    fn parses_decimal_and_fraction() {
        assert_eq!("1.3".parse::<GrowthRate>().unwrap(), GrowthRate::new(13, 10).unwrap());
        assert_eq!("13/10".parse::<GrowthRate>().unwrap(), GrowthRate::new(13, 10).unwrap());
        assert_eq!("-0.5".parse::<GrowthRate>().unwrap(), GrowthRate::new(-1, 2).unwrap());
        assert_eq!("7".parse::<GrowthRate>().unwrap(), GrowthRate::integer(7));
        assert!("1.".parse::<GrowthRate>().is_err());
        assert!("x/2".parse::<GrowthRate>().is_err());
    }

    #[test]
    fn ordering_is_exact() {
        // 43/10 < 56/13 even though both round to 4.3 at one decimal.
        let a = GrowthRate::new(43, 10).unwrap();
        let b = GrowthRate::new(56, 13).unwrap();
        assert!(a < b);
    }
}
