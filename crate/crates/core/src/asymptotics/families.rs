//! Explicit walk families with known limiting growth rates.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::rational::GrowthRate;
use crate::walks::StrategyWalk;

use super::surd::{floor_surd_multiple, QuadraticSurd};

/// Generators refuse walks longer than this many steps.
pub const MAX_GENERATED_LEN: u128 = 1 << 28;

fn check_len(len: u128, what: &str) -> Result<usize> {
    if len > MAX_GENERATED_LEN {
        return Err(Error::InvalidParameter(format!(
            "{what} would have {len} steps, above the limit of {MAX_GENERATED_LEN}"
        )));
    }
    Ok(len as usize)
}

fn build(runs: &[(usize, usize)]) -> Result<StrategyWalk> {
    let mut w = StrategyWalk::empty(2)?;
    for &(color, count) in runs {
        w.extend_run(color, count)?;
    }
    Ok(w)
}

/// Row lengths `(l1, l2[, l3])` of the family for `c` columns at scale `10^t`.
pub fn delta_family_lengths(c: u32, t: u32) -> Result<Vec<usize>> {
    let n = 10u128
        .checked_pow(t)
        .ok_or_else(|| Error::InvalidParameter(format!("scale 10^{t} is too large")))?;
    let lens: Vec<i128> = match c {
        4 => vec![n as i128, floor_surd_multiple(13, -1, 2, n)?],
        5 => vec![
            n as i128,
            floor_surd_multiple(6, 0, 2, n)?,
            floor_surd_multiple(6, -1, 1, n)?,
        ],
        6 => vec![
            n as i128,
            floor_surd_multiple(37, 1, 6, n)?,
            floor_surd_multiple(37, -2, 3, n)?,
        ],
        _ => {
            return Err(Error::InvalidParameter(format!(
                "families exist for 4, 5 or 6 columns, not {c}"
            )))
        }
    };
    check_len(*lens.last().expect("nonempty") as u128 + c as u128, "family walk")?;
    Ok(lens.into_iter().map(|v| v as usize).collect())
}

/// The family walk for `c` columns at scale `10^t`, in `W(l_last, c)`:
///
/// * `c = 4`: `1^{l1-1}, 2, 1^{l2-l1}, 2^2`
/// * `c = 5`: `1^{l1-1}, 2, 1^{l2-l1}, 2, 1^{l3-l2}, 2^2`
/// * `c = 6`: `1^{l1-1}, 2, 1^{l2-l1}, 2, 1^{l3-l2}, 2^3`
pub fn delta_family(c: u32, t: u32) -> Result<StrategyWalk> {
    let l = delta_family_lengths(c, t)?;
    match c {
        4 => build(&[(1, l[0] - 1), (2, 1), (1, l[1] - l[0]), (2, 2)]),
        5 => build(&[(1, l[0] - 1), (2, 1), (1, l[1] - l[0]), (2, 1), (1, l[2] - l[1]), (2, 2)]),
        _ => build(&[(1, l[0] - 1), (2, 1), (1, l[1] - l[0]), (2, 1), (1, l[2] - l[1]), (2, 3)]),
    }
}

/// Limit of `delta_of_walk(delta_family(c, t))` as `t` grows.
pub fn delta_family_limit(c: u32) -> Result<QuadraticSurd> {
    match c {
        4 => Ok(QuadraticSurd::delta4()),
        5 => Ok(QuadraticSurd::delta5()),
        6 => Ok(QuadraticSurd::delta6()),
        _ => Err(Error::InvalidParameter(format!(
            "families exist for 4, 5 or 6 columns, not {c}"
        ))),
    }
}

/// Parameters of the self-similar construction: at generation `t` the
/// column counts are `l1_t = s * l2_{t-1}` and `l2_t = q * l1_t`, and the
/// row count is `c_t = 4^t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BootstrapParams {
    q: GrowthRate,
    s: u64,
    t: u32,
    sq: u64,
}

impl BootstrapParams {
    /// Requires `13/10 <= q < (sqrt(13) - 1)/2` and `s * q` integral. Values
    /// of `s` below 100 are accepted with a warning; the construction is
    /// well defined for them but the rate estimate assumes `s >= 100`.
    pub fn new(q: GrowthRate, s: u64, t: u32) -> Result<Self> {
        let lower = GrowthRate::new(13, 10)?;
        let upper = QuadraticSurd::new(-1, 1, 13, 2)?;
        if q < lower || upper.cmp_rational(&q)? != Ordering::Less {
            return Err(Error::InvalidParameter(format!(
                "q = {q} must satisfy 13/10 <= q < (sqrt(13) - 1)/2"
            )));
        }
        if s == 0 {
            return Err(Error::InvalidParameter("s must be positive".into()));
        }
        let sq = q
            .checked_mul(&GrowthRate::integer(s as i128))
            .ok_or(Error::Overflow { step: 0 })?;
        if sq.denom() != 1 {
            return Err(Error::InvalidParameter(format!("s * q = {sq} is not an integer")));
        }
        if s < 100 {
            log::warn!("s = {s} is below 100; the walk is built but the rate bound f(q, s) assumes s >= 100");
        }
        Ok(BootstrapParams {
            q,
            s,
            t,
            sq: sq.numer() as u64,
        })
    }

    pub fn q(&self) -> GrowthRate {
        self.q
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// `(l1_g, l2_g, c_g)` for generation `g`.
    pub fn generation(&self, g: u32) -> Result<(u128, u128, u128)> {
        let overflow = || Error::InvalidParameter(format!("generation {g} exceeds 128-bit sizes"));
        if g == 0 {
            return Ok((1, 1, 1));
        }
        let prev_l2 = (self.sq as u128).checked_pow(g - 1).ok_or_else(overflow)?;
        let l1 = prev_l2.checked_mul(self.s as u128).ok_or_else(overflow)?;
        let l2 = prev_l2.checked_mul(self.sq as u128).ok_or_else(overflow)?;
        let c = 4u128.checked_pow(g).ok_or_else(overflow)?;
        Ok((l1, l2, c))
    }
}

/// The walk of generation `t`, in `W(l2_t, 4^t)`, built by appending
/// `1^{l1_g - l2_{g-1}}, 2^{c_{g-1}}, 1^{l2_g - l1_g}, 2^{2 c_{g-1}}` for
/// `g = 1..=t` to the empty walk.
pub fn bootstrap_walk(params: &BootstrapParams) -> Result<StrategyWalk> {
    let (_, l2, c) = params.generation(params.t)?;
    check_len(l2 + c - 2, "bootstrap walk")?;
    let mut w = StrategyWalk::empty(2)?;
    for g in 1..=params.t {
        let (l1, l2, _) = params.generation(g)?;
        let (_, prev_l2, prev_c) = params.generation(g - 1)?;
        w.extend_run(1, (l1 - prev_l2) as usize)?;
        w.extend_run(2, prev_c as usize)?;
        w.extend_run(1, (l2 - l1) as usize)?;
        w.extend_run(2, 2 * prev_c as usize)?;
    }
    Ok(w)
}

/// `f(q, s) = min{3 + q - 14/s, 2 + 3/q - 20/(q s)}`, exactly.
pub fn bootstrap_rate(q: GrowthRate, s: u64) -> Result<GrowthRate> {
    if q.numer() <= 0 || s == 0 {
        return Err(Error::InvalidParameter("need q > 0 and s >= 1".into()));
    }
    let overflow = || Error::Overflow { step: 0 };
    let int = GrowthRate::integer;
    let s = int(s as i128);
    let first = int(3)
        .checked_add(&q)
        .and_then(|v| v.checked_sub(&int(14).checked_div(&s)?))
        .ok_or_else(overflow)?;
    let second = int(2)
        .checked_add(&int(3).checked_div(&q).ok_or_else(overflow)?)
        .and_then(|v| v.checked_sub(&int(20).checked_div(&q.checked_mul(&s)?)?))
        .ok_or_else(overflow)?;
    Ok(first.min(second))
}

/// `l-hat_t = 10 * 416^t`, the side of the symmetric walk of generation `t`.
pub fn symmetric_lb_side(t: u32) -> Result<u128> {
    416u128
        .checked_pow(t)
        .and_then(|v| v.checked_mul(10))
        .ok_or_else(|| Error::InvalidParameter(format!("10 * 416^{t} exceeds 128 bits")))
}

/// The generation-`t` walk for `q = 13/10`, `s = 320`, padded to a square:
/// `alpha_t, 1^{L - l2_t}, 2^{L - 4^t}` with `L = 10 * l2_t`, in `W(L, L)`.
pub fn symmetric_lb_walk(t: u32) -> Result<StrategyWalk> {
    let side = symmetric_lb_side(t)?;
    check_len(2 * side - 2, "symmetric walk")?;
    let params = BootstrapParams::new(GrowthRate::new(13, 10)?, 320, t)?;
    let (_, l2, c) = params.generation(t)?;
    let mut w = bootstrap_walk(&params)?;
    w.extend_run(1, (side - l2) as usize)?;
    w.extend_run(2, (side - c) as usize)?;
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recursion::{delta_of_walk, k_of_walk};

    fn q(n: i128, d: i128) -> GrowthRate {
        GrowthRate::new(n, d).unwrap()
    }

    #[test]
    fn family_examples() {
        let w = delta_family(4, 1).unwrap();
        assert_eq!(w.to_string(), "1^9,2,1^3,2^2");
        assert_eq!(w.targets(), &[13, 4]);
        assert_eq!(delta_of_walk(&w).unwrap(), q(43, 10));
        assert_eq!(delta_family_lengths(5, 1).unwrap(), vec![10, 12, 14]);
        assert_eq!(delta_family_lengths(6, 1).unwrap(), vec![10, 11, 13]);
        assert_eq!(delta_family(5, 1).unwrap().targets(), &[14, 5]);
        assert_eq!(delta_family(6, 1).unwrap().targets(), &[13, 6]);
        assert_eq!(delta_family(4, 0).unwrap().to_string(), "2^3");
        assert!(delta_family(7, 1).is_err());
        assert!(delta_family(4, 30).is_err());
    }

    #[test]
    fn bootstrap_examples() {
        let p = BootstrapParams::new(q(13, 10), 10, 1).unwrap();
        assert_eq!(bootstrap_walk(&p).unwrap(), delta_family(4, 1).unwrap());
        let p = BootstrapParams::new(q(13, 10), 320, 0).unwrap();
        let w = bootstrap_walk(&p).unwrap();
        assert!(w.is_empty());
        assert_eq!(w.targets(), &[1, 1]);
        let p = BootstrapParams::new(q(13, 10), 320, 1).unwrap();
        assert_eq!(p.generation(1).unwrap(), (320, 416, 4));
        assert_eq!(bootstrap_walk(&p).unwrap().targets(), &[416, 4]);
    }

    #[test]
    fn bootstrap_validation() {
        assert!(BootstrapParams::new(q(13, 10), 7, 1).is_err());
        assert!(BootstrapParams::new(q(12, 10), 10, 1).is_err());
        assert!(BootstrapParams::new(q(1303, 1000), 1000, 1).is_err());
        assert!(BootstrapParams::new(q(1302, 1000), 500, 1).is_ok());
    }

    #[test]
    fn rate_examples() {
        let f = bootstrap_rate(q(13, 10), 320).unwrap();
        assert!(f >= q(17, 4));
        assert_eq!(f, q(43, 10).checked_sub(&q(14, 320)).unwrap());
        assert_eq!(bootstrap_rate(q(1, 1), 1).unwrap(), GrowthRate::integer(-15));
        // With q fixed at 13/10 the rate tends to 43/10, not to the limit.
        let fixed_q = bootstrap_rate(q(13, 10), 1_000_000_000).unwrap();
        assert_eq!(fixed_q, q(43, 10).checked_sub(&q(14, 1_000_000_000)).unwrap());
        assert!(!QuadraticSurd::delta4().within(&fixed_q, &q(1, 1_000_000)).unwrap());
        // Letting q approach (sqrt(13) - 1)/2 as well recovers it.
        let far = bootstrap_rate(q(1302775, 1000000), 1_000_000_000).unwrap();
        assert!(QuadraticSurd::delta4().within(&far, &q(1, 1_000_000)).unwrap());
    }

    #[test]
    fn symmetric_walk_generation_zero() {
        let w = symmetric_lb_walk(0).unwrap();
        assert_eq!(w.to_string(), "1^9,2^9");
        assert_eq!(k_of_walk(&w).unwrap(), 100);
        assert_eq!(symmetric_lb_side(1).unwrap(), 4160);
    }
}
