//! Admissible upper bounds on the best completion of a walk prefix.
//!
//! All arithmetic saturates at [`INF`], which stands for "no finite bound".

pub(crate) const INF: u64 = u64::MAX / 8;

#[inline]
pub(crate) fn sat_add(a: u64, b: u64) -> u64 {
    a.saturating_add(b).min(INF)
}

/// `min_{j1 + j2 = n} (x[j1] + x[j2])` with saturation.
#[inline]
pub(crate) fn split_min(x: &[u64], n: usize) -> u64 {
    let mut best = INF;
    for j in 0..=n / 2 {
        let v = sat_add(x[j], x[n - j]);
        if v < best {
            best = v;
        }
    }
    best
}

/// Minimum over the splits of `n` whose two indices are both below `x.len()`.
#[inline]
pub(crate) fn known_split_min(x: &[u64], n: usize) -> u64 {
    let a = x.len();
    let mut best = INF;
    for j in (n + 1).saturating_sub(a)..=n / 2 {
        let v = sat_add(x[j], x[n - j]);
        if v < best {
            best = v;
        }
    }
    best
}

/// Rule-of-thumb bound `2^d (k + 1) - 1`, valid because every step at most
/// doubles `k + 1`.
pub(crate) fn doubling_bound(k: u64, remaining: usize) -> u64 {
    if remaining >= 60 {
        return INF;
    }
    sat_add(k, 1).saturating_mul(1u64 << remaining).min(INF).saturating_sub(1)
}

/// Scratch buffers reused across bound evaluations.
#[derive(Default)]
pub(crate) struct Scratch {
    ya: Vec<u64>,
    yb: Vec<u64>,
}

/// Extends `x` to `len` entries with `y_n = beta + min_split(y, n - 1)`.
fn extend(out: &mut Vec<u64>, x: &[u64], len: usize, beta: u64) {
    out.clear();
    out.extend_from_slice(x);
    while out.len() < len {
        let n = out.len();
        let v = sat_add(beta, split_min(out, n - 1));
        out.push(v);
    }
}

/// Upper bound on the final value of every completion in which color `a`
/// reaches its target first, i.e. the last step of the walk has the other
/// color.
///
/// Once color `a` is complete, the other color's remaining entries follow a
/// fixed recurrence with offset `1 + A`, where `A` is color `a`'s final
/// min-split. Before that point every entry of color `a` is appended while
/// the other color's min-split is at most its value at the row where the
/// boundary is hit. The cases below split on that row.
fn first_complete_bound(xa: &[u64], xb: &[u64], la: usize, lb: usize, s: &mut Scratch, target: u64) -> u64 {
    let (a, b) = (xa.len(), xb.len());
    if a == la {
        let am = split_min(xa, la - 1);
        extend(&mut s.yb, xb, lb, sat_add(1, am));
        return sat_add(sat_add(1, am), split_min(&s.yb, lb - 1));
    }
    let finish = |b0: u64, s: &mut Scratch| -> u64 {
        extend(&mut s.ya, xa, la, sat_add(1, b0));
        let ah = split_min(&s.ya, la - 1);
        if ah >= INF {
            return INF;
        }
        extend(&mut s.yb, xb, lb, sat_add(1, ah));
        sat_add(sat_add(1, ah), split_min(&s.yb, lb - 1))
    };

    // Boundary hit at the current row.
    let mut best = finish(split_min(xb, b - 1), s);
    if best >= target {
        return best;
    }
    // Hit rows whose min-split is capped by pairs of known entries.
    let hi = (2 * b - 1).min(lb - 1);
    if hi > b {
        let cap = (b..hi).map(|n| known_split_min(xb, n)).max().unwrap_or(0);
        best = best.max(finish(cap, s));
        if best >= target {
            return best;
        }
    }
    // Later hit rows: alternate the two one-sided bounds until they settle.
    if 2 * b < lb {
        if 2 * (a - 1) < la - 1 {
            return INF;
        }
        let mut b0 = INF;
        let mut ah;
        loop {
            extend(&mut s.ya, xa, la, sat_add(1, b0));
            ah = split_min(&s.ya, la - 1);
            extend(&mut s.yb, xb, lb, sat_add(1, ah));
            let next = split_min(&s.yb, lb - 2);
            if next >= b0 {
                break;
            }
            b0 = next;
        }
        best = best.max(sat_add(sat_add(1, ah), split_min(&s.yb, lb - 1)));
    }
    best
}

/// Upper bound on `k` over all completions of the prefix state `(x1, x2)`
/// towards targets `(l1, l2)`. Evaluation stops early once the bound reaches
/// `target`, in which case the returned value is only known to be
/// `>= target`.
pub(crate) fn completion_bound(x1: &[u64], x2: &[u64], l1: usize, l2: usize, s: &mut Scratch, target: u64) -> u64 {
    let (a, b) = (x1.len(), x2.len());
    // Both "complete first" branches are unbounded near the origin.
    if 2 * b < l2 && 2 * (a - 1) < l1 - 1 {
        return INF;
    }
    if 2 * a < l1 && 2 * (b - 1) < l2 - 1 {
        return INF;
    }
    let mut best = 0;
    if b < l2 || a == l1 {
        best = first_complete_bound(x1, x2, l1, l2, s, target);
    }
    if best < target && a < l1 {
        best = best.max(first_complete_bound(x2, x1, l2, l1, s, target));
    }
    best
}

/// Sufficient statistic of one color's sequence for the rest of the walk.
///
/// With `a` entries known and target `l`, later min-splits only read entries
/// `x_j` with `j <= l - 1 - a` and, for splits whose indices are both known,
/// the minimum over those splits. Everything downstream is monotone in this
/// vector, which is what makes pointwise dominance sound.
pub(crate) fn reduced_state(x: &[u64], l: usize, out: &mut Vec<u64>) {
    let a = x.len();
    let keep = l.saturating_sub(a).min(a);
    out.extend_from_slice(&x[..keep]);
    let hi = (2 * a - 2).min(l - 1);
    for n in (a - 1)..=hi {
        out.push(known_split_min(x, n));
    }
}
