//! The fixed-offset recurrence `x_n = beta + min_{j1 + j2 = n - 1} (x_j1 + x_j2)`
//! and the eventual periodicity of its differences.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::GrowthRate;
use crate::recursion::{min_rate_with_index, min_split};

/// Hard cap on extension length while looking for the periodic regime.
pub const MAX_EXTENSION: usize = 1_000_000;

/// Extends `prefix` to `n + 1` entries with the fixed-offset recurrence.
pub fn extend_recurrence(prefix: &[i128], beta: i128, n: usize) -> Result<Vec<i128>> {
    if prefix.is_empty() {
        return Err(Error::InvalidParameter("prefix must be nonempty".into()));
    }
    if n + 1 < prefix.len() {
        return Err(Error::InvalidParameter(format!(
            "target index {n} is inside the prefix of length {}",
            prefix.len()
        )));
    }
    let mut x = Vec::with_capacity(n + 1);
    x.extend_from_slice(prefix);
    while x.len() <= n {
        push_next(&mut x, beta)?;
    }
    Ok(x)
}

fn push_next(x: &mut Vec<i128>, beta: i128) -> Result<()> {
    let i = x.len();
    let v = min_split(x, i - 1)
        .and_then(|m| m.checked_add(beta))
        .ok_or(Error::Overflow { step: i })?;
    x.push(v);
    Ok(())
}

/// Periodic structure of the recurrence started from a given prefix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodAnalysis {
    pub prefix: Vec<i128>,
    pub beta: i128,
    /// Smallest index minimizing `(x_j + beta) / (j + 1)` over the prefix.
    pub p: usize,
    pub period_length: usize,
    /// `x_p + beta`, the growth over one period.
    pub increment: i128,
    pub delta: GrowthRate,
    /// Smallest index `o` with `x_n - x_{n - period} = increment` for every
    /// `n >= o`.
    pub onset: usize,
    /// The computed extension, long enough to certify the periodic regime.
    pub extension: Vec<i128>,
}

impl PeriodAnalysis {
    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "period": self.period_length,
            "increment": self.increment.to_string(),
            "delta": self.delta.to_string(),
            "onset": self.onset,
        })
    }
}

/// Finds the period and the onset of periodic differences.
///
/// With `P = p + 1` and `I = x_p + beta`, the split `(p, n - 1 - p)` gives
/// `x_n <= x_{n-P} + I` beyond the prefix. Conversely, if equality holds on
/// `[o, N)` with `N >= 2o + 1` and `N - P` past the prefix, then every split
/// of `N - 1` has its larger index in `[o, N)`, so shifting that index by `P`
/// gives `x_N >= x_{N-P} + I`; equality then propagates forever. The
/// extension stops at the first such `N` that also covers two full periods.
pub fn period_analysis(prefix: &[i128], beta: i128) -> Result<PeriodAnalysis> {
    if prefix.is_empty() {
        return Err(Error::InvalidParameter("prefix must be nonempty".into()));
    }
    let t1 = prefix.len();
    let (delta, p) = min_rate_with_index(prefix, beta).ok_or(Error::Overflow { step: 0 })?;
    let period = p + 1;
    let increment = prefix[p].checked_add(beta).ok_or(Error::Overflow { step: p })?;

    let mut x = prefix.to_vec();
    // Start of the current run of indices satisfying the periodic equality.
    let mut run_start: Option<usize> = None;
    for n in period..t1 {
        run_start = update_run(&x, n, period, increment, run_start);
    }
    loop {
        let n = x.len();
        if let Some(o) = run_start {
            if n >= 2 * o + 1 && n >= t1 + period && n - o >= 2 * period {
                return Ok(PeriodAnalysis {
                    prefix: prefix.to_vec(),
                    beta,
                    p,
                    period_length: period,
                    increment,
                    delta,
                    onset: o,
                    extension: x,
                });
            }
        }
        if n >= MAX_EXTENSION {
            return Err(Error::Internal(format!(
                "no periodic regime within {MAX_EXTENSION} terms"
            )));
        }
        push_next(&mut x, beta)?;
        let diff = x[n] - x[n - period];
        if diff > increment {
            return Err(Error::Internal(format!(
                "x[{n}] - x[{}] = {diff} exceeds the period increment {increment}",
                n - period
            )));
        }
        run_start = update_run(&x, n, period, increment, run_start);
    }
}

fn update_run(x: &[i128], n: usize, period: usize, increment: i128, run: Option<usize>) -> Option<usize> {
    if x[n].checked_sub(x[n - period]) == Some(increment) {
        Some(run.unwrap_or(n))
    } else {
        None
    }
}
