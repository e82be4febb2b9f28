//! Exact comparisons between rationals and numbers of the form
//! `(a + b*sqrt(d)) / w`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Roots;

use crate::error::{Error, Result};
use crate::rational::GrowthRate;

/// The real number `(a + b*sqrt(d)) / w` with `b >= 0`, `d >= 0`, `w > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticSurd {
    a: i128,
    b: i128,
    d: i128,
    w: i128,
}

impl QuadraticSurd {
    pub fn new(a: i128, b: i128, d: i128, w: i128) -> Result<Self> {
        if b < 0 || d < 0 || w <= 0 {
            return Err(Error::InvalidParameter(format!(
                "surd ({a} + {b}*sqrt({d}))/{w} needs b >= 0, d >= 0, w > 0"
            )));
        }
        Ok(QuadraticSurd { a, b, d, w })
    }

    /// `(5 + sqrt(13)) / 2`, the limit growth rate for four columns.
    pub fn delta4() -> Self {
        QuadraticSurd { a: 5, b: 1, d: 13, w: 2 }
    }

    /// `3 + sqrt(6)`.
    pub fn delta5() -> Self {
        QuadraticSurd { a: 3, b: 1, d: 6, w: 1 }
    }

    /// `(7 + sqrt(37)) / 2`.
    pub fn delta6() -> Self {
        QuadraticSurd { a: 7, b: 1, d: 37, w: 2 }
    }

    /// Exact form without the decimal approximation, e.g. `(5 + √13)/2`.
    pub fn algebraic(&self) -> String {
        let root = if self.b == 1 {
            format!("√{}", self.d)
        } else {
            format!("{}√{}", self.b, self.d)
        };
        let body = if self.a == 0 { root } else { format!("{} + {}", self.a, root) };
        if self.w == 1 {
            body
        } else {
            format!("({body})/{}", self.w)
        }
    }

    pub fn to_f64(&self) -> f64 {
        (self.a as f64 + self.b as f64 * (self.d as f64).sqrt()) / self.w as f64
    }

    /// Exact ordering of `r` relative to this number.
    pub fn cmp_rational(&self, r: &GrowthRate) -> Result<Ordering> {
        let overflow = || Error::Overflow { step: 0 };
        let (n, m) = (r.numer(), r.denom());
        // n/m ? (a + b sqrt d)/w  <=>  n w - a m ? b m sqrt d
        let lhs = n
            .checked_mul(self.w)
            .and_then(|v| v.checked_sub(self.a.checked_mul(m)?))
            .ok_or_else(overflow)?;
        let bm = self.b.checked_mul(m).ok_or_else(overflow)?;
        if lhs < 0 {
            return Ok(Ordering::Less);
        }
        let l2 = lhs.checked_mul(lhs).ok_or_else(overflow)?;
        let r2 = bm
            .checked_mul(bm)
            .and_then(|v| v.checked_mul(self.d))
            .ok_or_else(overflow)?;
        Ok(l2.cmp(&r2))
    }

    /// `|r - self| <= eps`, decided exactly.
    pub fn within(&self, r: &GrowthRate, eps: &GrowthRate) -> Result<bool> {
        let overflow = || Error::Overflow { step: 0 };
        let lo = r.checked_sub(eps).ok_or_else(overflow)?;
        let hi = r.checked_add(eps).ok_or_else(overflow)?;
        Ok(self.cmp_rational(&lo)? != Ordering::Greater && self.cmp_rational(&hi)? != Ordering::Less)
    }
}

impl fmt::Display for QuadraticSurd {
    /// Algebraic form followed by nine significant digits, e.g.
    /// `(5 + √13)/2 ≈ 4.30277564`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≈ {}", self.algebraic(), sig9(self.to_f64()))
    }
}

/// Formats `v` with nine significant digits.
pub fn sig9(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let digits = v.abs().log10().floor() as i32;
    let decimals = (8 - digits).max(0) as usize;
    format!("{v:.decimals$}")
}

/// `floor((isqrt(d * n^2) + a * n) / w)`, which equals `floor((sqrt(d) + a) * n / w)`.
pub(crate) fn floor_surd_multiple(d: u128, a: i128, w: i128, n: u128) -> Result<i128> {
    let overflow = || Error::Overflow { step: 0 };
    let sq = n
        .checked_mul(n)
        .and_then(|v| v.checked_mul(d))
        .ok_or_else(overflow)?
        .sqrt();
    let num = (sq as i128)
        .checked_add(a.checked_mul(n as i128).ok_or_else(overflow)?)
        .ok_or_else(overflow)?;
    Ok(num.div_euclid(w))
}

/// Decides `k >= side^e / 2` exactly for a positive rational exponent
/// `e = n/d` by comparing `(2k)^d` with `side^n`.
pub fn at_least_half_power(k: u128, side: u128, exponent: &GrowthRate) -> Result<bool> {
    let (n, d) = (exponent.numer(), exponent.denom());
    let small = |v: i128| u32::try_from(v).ok().filter(|&v| v > 0 && v <= 10_000);
    let (Some(n), Some(d)) = (small(n), small(d)) else {
        return Err(Error::InvalidParameter(format!(
            "exponent {exponent} must be positive with numerator and denominator at most 10000"
        )));
    };
    let lhs = (BigUint::from(k) * 2u32).pow(d);
    let rhs = BigUint::from(side).pow(n);
    Ok(lhs >= rhs)
}

/// Decides `r <= c^{log2 3}`.
///
/// The threshold is exact when `c` is a power of two (`3^m` for `c = 2^m`).
/// Otherwise logarithms are compared in `f64`; results inside a relative band
/// of `1e-12` are reported as inconclusive (`None`) rather than guessed.
pub fn at_most_log3_power(r: &GrowthRate, c: u64) -> Option<bool> {
    if c == 0 {
        return None;
    }
    if c.is_power_of_two() {
        let m = c.trailing_zeros();
        let bound = GrowthRate::integer(3i128.checked_pow(m)?);
        return Some(*r <= bound);
    }
    if r.numer() <= 0 {
        return Some(true);
    }
    let lhs = (r.numer() as f64).ln() - (r.denom() as f64).ln();
    let rhs = 3f64.log2() * (c as f64).ln();
    let band = 1e-12 * rhs.abs().max(1.0);
    if lhs < rhs - band {
        Some(true)
    } else if lhs > rhs + band {
        Some(false)
    } else {
        None
    }
}
