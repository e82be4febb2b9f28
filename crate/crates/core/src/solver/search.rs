//! Depth-first search over walk prefixes with incremental evaluation.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::error::{Error, Result};

use super::bound::{self, Scratch, INF};
use super::NodeCounters;

/// Knobs shared by the pruned search.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Pruning {
    pub bounds: bool,
    pub dominance: bool,
    pub frontier_cap: usize,
    pub witness_cap: usize,
}

impl Pruning {
    pub(crate) fn none() -> Self {
        Pruning {
            bounds: false,
            dominance: false,
            frontier_cap: 0,
            witness_cap: usize::MAX,
        }
    }
}

struct FrontierEntry {
    state: Vec<u64>,
    /// Upper bound on every leaf value below the stored prefix.
    upper: u64,
    stamp: u64,
}

/// Per lattice point, the reduced states of prefixes already searched.
#[derive(Default)]
struct Frontier {
    points: HashMap<(usize, usize), Vec<FrontierEntry>>,
    clock: u64,
}

impl Frontier {
    /// Returns the stored upper bound of an entry dominating `state` whose
    /// whole subtree stays below `threshold`.
    fn lookup(&mut self, point: (usize, usize), state: &[u64], threshold: u64) -> Option<u64> {
        self.clock += 1;
        let clock = self.clock;
        let list = self.points.get_mut(&point)?;
        for e in list.iter_mut() {
            if e.upper < threshold && state.iter().zip(&e.state).all(|(s, t)| s <= t) {
                e.stamp = clock;
                return Some(e.upper);
            }
        }
        None
    }

    fn insert(&mut self, point: (usize, usize), state: Vec<u64>, upper: u64, cap: usize) {
        self.clock += 1;
        let stamp = self.clock;
        let list = self.points.entry(point).or_default();
        list.retain(|e| !(e.upper <= upper && e.state.iter().zip(&state).all(|(t, s)| t <= s)));
        if list.len() >= cap {
            if let Some(i) = (0..list.len()).min_by_key(|&i| list[i].stamp) {
                list.swap_remove(i);
            }
        }
        list.push(FrontierEntry { state, upper, stamp });
    }
}

/// Shared best value across workers; monotonically non-decreasing.
pub(crate) struct Incumbent(AtomicU64);

impl Incumbent {
    pub(crate) fn new(v: u64) -> Self {
        Incumbent(AtomicU64::new(v))
    }

    pub(crate) fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }

    fn raise(&self, v: u64) {
        self.0.fetch_max(v, Ordering::Relaxed);
    }
}

/// Result of searching one subtree.
#[derive(Debug, Default)]
pub(crate) struct SubtreeResult {
    pub best: u64,
    /// Walks (as color sequences) reaching `best`, in lexicographic order.
    pub witnesses: Vec<Vec<u8>>,
    pub counters: NodeCounters,
}

pub(crate) struct Searcher<'a> {
    l: [usize; 2],
    x: [Vec<u64>; 2],
    path: Vec<u8>,
    prune: Pruning,
    incumbent: &'a Incumbent,
    scratch: Scratch,
    frontier: Frontier,
    key: Vec<u64>,
    result: SubtreeResult,
}

impl<'a> Searcher<'a> {
    pub(crate) fn new(l1: usize, l2: usize, prune: Pruning, incumbent: &'a Incumbent) -> Self {
        Searcher {
            l: [l1, l2],
            x: [vec![0], vec![0]],
            path: Vec::with_capacity(l1 + l2),
            prune,
            incumbent,
            scratch: Scratch::default(),
            frontier: Frontier::default(),
            key: Vec::new(),
            result: SubtreeResult::default(),
        }
    }

    fn current_k(&self) -> Result<u64> {
        let overflow = || Error::Overflow {
            step: self.path.len(),
        };
        let mut k: u64 = 1;
        for x in &self.x {
            let n = x.len() - 1;
            let mut m = u64::MAX;
            for j in 0..=n / 2 {
                let v = x[j].checked_add(x[n - j]).ok_or_else(overflow)?;
                m = m.min(v);
            }
            k = k.checked_add(m).ok_or_else(overflow)?;
        }
        // Values at INF or above would be confused with "unbounded".
        if k >= INF {
            return Err(overflow());
        }
        Ok(k)
    }

    fn step(&mut self, color: usize) -> Result<()> {
        let k = self.current_k()?;
        self.x[color].push(k);
        self.path.push(color as u8 + 1);
        Ok(())
    }

    fn unstep(&mut self) {
        let c = self.path.pop().expect("unstep on empty path") as usize - 1;
        self.x[c].pop();
    }

    /// Leaves below this value are not interesting.
    fn threshold(&self) -> u64 {
        let best = self.result.best.max(self.incumbent.get());
        if self.result.best == best && self.result.witnesses.len() >= self.prune.witness_cap {
            best + 1
        } else {
            best
        }
    }

    fn record_leaf(&mut self, k: u64) {
        if k > self.result.best {
            self.result.best = k;
            self.result.witnesses.clear();
            self.incumbent.raise(k);
        }
        if k == self.result.best && k >= self.incumbent.get() && self.result.witnesses.len() < self.prune.witness_cap {
            self.result.witnesses.push(self.path.clone());
        }
    }

    /// Searches the subtree below the current prefix given as color steps.
    pub(crate) fn run(mut self, prefix: &[u8]) -> Result<SubtreeResult> {
        for &c in prefix {
            self.step(c as usize - 1)?;
        }
        self.dfs()?;
        Ok(self.result)
    }

    /// Returns an upper bound on every leaf value in the subtree.
    fn dfs(&mut self) -> Result<u64> {
        let k = self.current_k()?;
        let (a, b) = (self.x[0].len(), self.x[1].len());
        let [l1, l2] = self.l;
        if a == l1 && b == l2 {
            self.result.counters.leaves += 1;
            self.record_leaf(k);
            return Ok(k);
        }
        if self.prune.bounds {
            let threshold = self.threshold();
            let rough = bound::doubling_bound(k, l1 + l2 - a - b);
            let ub = if rough < threshold {
                rough
            } else {
                bound::completion_bound(&self.x[0], &self.x[1], l1, l2, &mut self.scratch, threshold)
            };
            if ub < threshold {
                self.result.counters.pruned_bound += 1;
                return Ok(ub);
            }
        }
        let mut key = Vec::new();
        let use_frontier = self.prune.dominance;
        if use_frontier {
            std::mem::swap(&mut key, &mut self.key);
            key.clear();
            bound::reduced_state(&self.x[0], l1, &mut key);
            bound::reduced_state(&self.x[1], l2, &mut key);
            if let Some(upper) = self.frontier.lookup((a, b), &key, self.threshold()) {
                self.result.counters.pruned_dominance += 1;
                self.key = key;
                return Ok(upper);
            }
        }
        self.result.counters.expanded += 1;
        let mut upper = 0;
        for color in 0..2 {
            if self.x[color].len() < self.l[color] {
                self.step(color)?;
                upper = upper.max(self.dfs()?);
                self.unstep();
            }
        }
        if use_frontier && upper < self.threshold() && upper < INF {
            self.frontier.insert((a, b), key, upper, self.prune.frontier_cap);
        }
        Ok(upper)
    }
}

/// Prefixes of length `depth` (or shorter if they reach the targets) in
/// lexicographic order, starting from `root`.
pub(crate) fn split_prefixes(l1: usize, l2: usize, root: &[u8], depth: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut stack = vec![root.to_vec()];
    while let Some(p) = stack.pop() {
        let a = 1 + p.iter().filter(|&&c| c == 1).count();
        let b = 1 + p.iter().filter(|&&c| c == 2).count();
        if p.len() >= depth || (a == l1 && b == l2) {
            out.push(p);
            continue;
        }
        // Push color 2 first so color 1 pops first.
        if b < l2 {
            let mut q = p.clone();
            q.push(2);
            stack.push(q);
        }
        if a < l1 {
            let mut q = p;
            q.push(1);
            stack.push(q);
        }
    }
    out
}

/// Searches every subtree below `prefixes` with `workers` threads and merges
/// the results. Subtrees are handed out in order, so each worker sees its
/// own witnesses in lexicographic order.
pub(crate) fn run_parallel(
    l1: usize,
    l2: usize,
    prefixes: &[Vec<u8>],
    prune: Pruning,
    incumbent: &Incumbent,
    workers: usize,
) -> Result<SubtreeResult> {
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Result<SubtreeResult>>> = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..workers.max(1) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(prefix) = prefixes.get(i) else { break };
                let r = Searcher::new(l1, l2, prune, incumbent).run(prefix);
                results.lock().expect("result lock poisoned").push(r);
            });
        }
    });
    let mut merged = SubtreeResult::default();
    for r in results.into_inner().expect("result lock poisoned") {
        let r = r?;
        merged.counters.add(&r.counters);
        if r.best > merged.best {
            merged.best = r.best;
            merged.witnesses.clear();
        }
        if r.best == merged.best {
            merged.witnesses.extend(r.witnesses);
        }
    }
    merged.witnesses.sort();
    merged.witnesses.truncate(prune.witness_cap);
    Ok(merged)
}
