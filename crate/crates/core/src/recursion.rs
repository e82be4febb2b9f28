//! The walk-indexed recursion and the functionals derived from it.
//!
//! For a walk `alpha` the recursion computes values `k_0, ..., k_d` where
//!
//! ```text
//! k_i = 1 + sum_s min_{j1 + j2 = nu_{i,s} - 1} (x_{s,j1} + x_{s,j2})
//! ```
//!
//! and `k_i` is appended to `x_{alpha_{i+1}}` (except after the last step).
//! Every `x_s` starts as `(0)`.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::rational::GrowthRate;
use crate::walks::StrategyWalk;

/// `min_{j1 + j2 = n} (x[j1] + x[j2])`, scanning `j1 <= n / 2` only.
///
/// `x` must have at least `n + 1` entries. Returns `None` on overflow.
pub fn min_split(x: &[i128], n: usize) -> Option<i128> {
    debug_assert!(x.len() > n);
    let mut best: Option<i128> = None;
    for j in 0..=n / 2 {
        let v = x[j].checked_add(x[n - j])?;
        best = Some(match best {
            Some(b) if b <= v => b,
            _ => v,
        });
    }
    best
}

/// All values computed by the recursion along one walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursionTrace {
    walk: StrategyWalk,
    k_values: Vec<i128>,
    x_sequences: Vec<Vec<i128>>,
}

impl RecursionTrace {
    pub fn walk(&self) -> &StrategyWalk {
        &self.walk
    }

    /// `k_0, ..., k_d`.
    pub fn k_values(&self) -> &[i128] {
        &self.k_values
    }

    /// `k(alpha) = k_d`.
    pub fn k(&self) -> i128 {
        *self.k_values.last().expect("trace always holds k_0")
    }

    /// `x_s = (x_{s,0}, ..., x_{s,l_s - 1})` for the 1-based color `s`.
    pub fn x(&self, color: usize) -> &[i128] {
        &self.x_sequences[color - 1]
    }

    pub fn x_sequences(&self) -> &[Vec<i128>] {
        &self.x_sequences
    }

    /// `x_s` followed by `x_{s,l_s} := k_d`, the value the next step in
    /// direction `s` would have appended.
    pub fn x_extended(&self, color: usize) -> Vec<i128> {
        let mut x = self.x(color).to_vec();
        x.push(self.k());
        x
    }

    /// JSON export with all integers as decimal strings.
    pub fn to_json(&self) -> Value {
        let strings = |v: &[i128]| -> Value {
            Value::Array(v.iter().map(|n| Value::String(n.to_string())).collect())
        };
        let mut map = Map::new();
        map.insert("walk".into(), Value::String(self.walk.to_string()));
        map.insert(
            "targets".into(),
            json!(self.walk.targets().iter().map(|t| t.to_string()).collect::<Vec<_>>()),
        );
        map.insert("k".into(), strings(&self.k_values));
        for (s, x) in self.x_sequences.iter().enumerate() {
            map.insert(format!("x{}", s + 1), strings(x));
        }
        map.insert("kd".into(), Value::String(self.k().to_string()));
        Value::Object(map)
    }
}

/// Runs the recursion along `walk`.
pub fn evaluate(walk: &StrategyWalk) -> Result<RecursionTrace> {
    match evaluate_narrow(walk) {
        Some(trace) => Ok(trace),
        None => evaluate_wide(walk),
    }
}

/// Values stay below this bound in the narrow evaluator so that sums of two
/// of them cannot overflow `i64`.
const NARROW_LIMIT: i64 = i64::MAX / 4;

#[inline]
fn min_split_narrow(x: &[i64], n: usize) -> i64 {
    let h = n / 2;
    x[..=h]
        .iter()
        .zip(x[n - h..=n].iter().rev())
        .map(|(a, b)| a + b)
        .min()
        .expect("at least one split")
}

/// `i64` evaluation, vectorizable because no sum can overflow. Returns `None`
/// as soon as a value leaves the safe range.
fn evaluate_narrow(walk: &StrategyWalk) -> Option<RecursionTrace> {
    let mut x: Vec<Vec<i64>> = walk
        .targets()
        .iter()
        .map(|&l| {
            let mut v = Vec::with_capacity(l);
            v.push(0);
            v
        })
        .collect();
    let mut k_values = Vec::with_capacity(walk.len() + 1);
    let entries = walk.entries();
    for i in 0..=entries.len() {
        let mut k: i64 = 1;
        for xs in &x {
            k += min_split_narrow(xs, xs.len() - 1);
            if k >= NARROW_LIMIT {
                return None;
            }
        }
        k_values.push(k as i128);
        if let Some(&sigma) = entries.get(i) {
            x[sigma - 1].push(k);
        }
    }
    Some(RecursionTrace {
        walk: walk.clone(),
        k_values,
        x_sequences: x.into_iter().map(|v| v.into_iter().map(i128::from).collect()).collect(),
    })
}

fn evaluate_wide(walk: &StrategyWalk) -> Result<RecursionTrace> {
    let r = walk.colors();
    let mut x: Vec<Vec<i128>> = walk
        .targets()
        .iter()
        .map(|&l| {
            let mut v = Vec::with_capacity(l);
            v.push(0);
            v
        })
        .collect();
    let mut k_values = Vec::with_capacity(walk.len() + 1);
    let entries = walk.entries();
    for i in 0..=entries.len() {
        let mut k: i128 = 1;
        for xs in x.iter().take(r) {
            let m = min_split(xs, xs.len() - 1).ok_or(Error::Overflow { step: i })?;
            k = k.checked_add(m).ok_or(Error::Overflow { step: i })?;
        }
        k_values.push(k);
        if let Some(&sigma) = entries.get(i) {
            x[sigma - 1].push(k);
        }
    }
    Ok(RecursionTrace {
        walk: walk.clone(),
        k_values,
        x_sequences: x,
    })
}

/// `k(alpha)`.
pub fn k_of_walk(walk: &StrategyWalk) -> Result<i128> {
    Ok(evaluate(walk)?.k())
}

fn require_two_colors(walk: &StrategyWalk) -> Result<()> {
    if walk.colors() != 2 {
        return Err(Error::UnsupportedArity {
            expected: 2,
            found: walk.colors(),
        });
    }
    Ok(())
}

/// `beta(alpha) = 1 + min_{j1 + j2 = c - 1} (x_{2,j1} + x_{2,j2})` for a walk
/// in `W(l, c)`.
pub fn beta_of_walk(walk: &StrategyWalk) -> Result<i128> {
    require_two_colors(walk)?;
    beta_of_trace(&evaluate(walk)?)
}

pub(crate) fn beta_of_trace(trace: &RecursionTrace) -> Result<i128> {
    let x2 = trace.x(2);
    let overflow = Error::Overflow {
        step: trace.walk().len(),
    };
    min_split(x2, x2.len() - 1)
        .and_then(|m| m.checked_add(1))
        .ok_or(overflow)
}

/// `delta(alpha) = min_{0 <= j <= l - 1} (x_{1,j} + beta(alpha)) / (j + 1)`.
pub fn delta_of_walk(walk: &StrategyWalk) -> Result<GrowthRate> {
    require_two_colors(walk)?;
    let trace = evaluate(walk)?;
    let beta = beta_of_trace(&trace)?;
    min_rate(trace.x(1), beta).ok_or(Error::Overflow { step: walk.len() })
}

/// `min_j (x[j] + beta) / (j + 1)` as an exact fraction, together with the
/// smallest minimizing index.
pub(crate) fn min_rate_with_index(x: &[i128], beta: i128) -> Option<(GrowthRate, usize)> {
    let mut best: Option<(i128, i128, usize)> = None;
    for (j, &xj) in x.iter().enumerate() {
        let num = xj.checked_add(beta)?;
        let den = j as i128 + 1;
        let better = match best {
            None => true,
            // num/den < bn/bd  <=>  num*bd < bn*den  (denominators positive)
            Some((bn, bd, _)) => num.checked_mul(bd)? < bn.checked_mul(den)?,
        };
        if better {
            best = Some((num, den, j));
        }
    }
    let (n, d, j) = best?;
    Some((GrowthRate::new(n, d).ok()?, j))
}

fn min_rate(x: &[i128], beta: i128) -> Option<GrowthRate> {
    min_rate_with_index(x, beta).map(|(r, _)| r)
}
