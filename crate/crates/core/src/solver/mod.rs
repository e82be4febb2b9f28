//! Exact computation of `k*(P_l1, P_l2)`, the maximum of `k(alpha)` over all
//! walks in `W(l1, l2)`.

mod bound;
mod search;
mod table;

use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::GrowthRate;
use crate::walks::{count_walks, make_walk, StrategyWalk};

use search::{Incumbent, Pruning, Searcher};

pub use table::{table_value, verify_table, verify_table_range, TableReport, TableRow, TABLE_MAX_L};

/// Largest number of walks the exhaustive search accepts by default.
pub const DEFAULT_NODE_CAP: u128 = 100_000_000;

/// Default number of maximizing walks kept in a report.
pub const DEFAULT_WITNESS_CAP: usize = 16;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct NodeCounters {
    /// Prefixes whose children were generated.
    pub expanded: u64,
    pub pruned_bound: u64,
    pub pruned_dominance: u64,
    /// Complete walks evaluated.
    pub leaves: u64,
}

impl NodeCounters {
    fn add(&mut self, other: &NodeCounters) {
        self.expanded += other.expanded;
        self.pruned_bound += other.pruned_bound;
        self.pruned_dominance += other.pruned_dominance;
        self.leaves += other.leaves;
    }
}

/// Outcome of a search for `k*`.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub targets: (usize, usize),
    pub kstar: u64,
    /// Walks attaining `kstar`, lexicographically smallest first.
    pub witnesses: Vec<StrategyWalk>,
    /// True when more maximizers may exist than are listed.
    pub witnesses_capped: bool,
    pub nodes: NodeCounters,
    pub wall_time: Duration,
}

impl SearchReport {
    pub fn to_json(&self) -> Value {
        json!({
            "l1": self.targets.0,
            "l2": self.targets.1,
            "kstar": self.kstar,
            "witnesses": self.witnesses.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            "witnesses_capped": self.witnesses_capped,
            "nodes": {
                "expanded": self.nodes.expanded,
                "pruned_bound": self.nodes.pruned_bound,
                "pruned_dominance": self.nodes.pruned_dominance,
                "leaves": self.nodes.leaves,
            },
            "wall_time_s": self.wall_time.as_secs_f64(),
        })
    }
}

/// Settings for [`kstar_branch_and_bound_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Worker threads; 1 gives a deterministic search with reproducible
    /// counters.
    pub workers: usize,
    pub witness_cap: usize,
    /// Prune prefixes dominated by an already searched prefix at the same
    /// lattice point. Off by default: with the completion bound in place it
    /// rarely fires and costs about a third more time per node.
    pub dominance: bool,
    /// Stored prefixes per lattice point; the least recently used is evicted.
    pub frontier_cap: usize,
    /// Search only walks starting with color 1 when `l1 == l2` and add the
    /// swapped maximizers afterwards.
    pub symmetry: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            workers: 1,
            witness_cap: DEFAULT_WITNESS_CAP,
            dominance: false,
            frontier_cap: 32,
            symmetry: true,
        }
    }
}

fn check_targets(l1: usize, l2: usize) -> Result<()> {
    if l1 == 0 || l2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "path lengths must be positive, got ({l1}, {l2})"
        )));
    }
    Ok(())
}

fn to_walk(path: &[u8]) -> Result<StrategyWalk> {
    make_walk(2, path.iter().map(|&c| c as usize).collect())
}

/// Maximum of `k` over every walk in `W(l1, l2)`, refusing instances with
/// more than [`DEFAULT_NODE_CAP`] walks. All maximizers are returned.
pub fn kstar_exhaustive(targets: (usize, usize)) -> Result<SearchReport> {
    kstar_exhaustive_with_cap(targets, DEFAULT_NODE_CAP)
}

pub fn kstar_exhaustive_with_cap(targets: (usize, usize), cap: u128) -> Result<SearchReport> {
    let (l1, l2) = targets;
    check_targets(l1, l2)?;
    let count = count_walks(&[l1, l2]).unwrap_or(u128::MAX);
    if count > cap {
        return Err(Error::CapExceeded { count, cap });
    }
    let start = Instant::now();
    let incumbent = Incumbent::new(0);
    let r = Searcher::new(l1, l2, Pruning::none(), &incumbent).run(&[])?;
    Ok(SearchReport {
        targets,
        kstar: r.best,
        witnesses: r.witnesses.iter().map(|p| to_walk(p)).collect::<Result<_>>()?,
        witnesses_capped: false,
        nodes: r.counters,
        wall_time: start.elapsed(),
    })
}

/// `k*(P_l1, P_l2)` by branch-and-bound with the default configuration.
pub fn kstar_branch_and_bound(targets: (usize, usize)) -> Result<SearchReport> {
    kstar_branch_and_bound_with(targets, &SearchConfig::default())
}

pub fn kstar_branch_and_bound_with(targets: (usize, usize), config: &SearchConfig) -> Result<SearchReport> {
    let (l1, l2) = targets;
    check_targets(l1, l2)?;
    if config.witness_cap == 0 {
        return Err(Error::InvalidParameter("witness cap must be at least 1".into()));
    }
    let start = Instant::now();
    let greedy = (l1 as u64)
        .checked_mul(l2 as u64)
        .ok_or(Error::Overflow { step: 0 })?;
    let incumbent = Incumbent::new(greedy);
    let prune = Pruning {
        bounds: true,
        dominance: config.dominance,
        frontier_cap: config.frontier_cap.max(1),
        witness_cap: config.witness_cap,
    };
    let symmetric = config.symmetry && l1 == l2 && l1 > 1;
    let root: Vec<u8> = if symmetric { vec![1] } else { vec![] };

    let r = if config.workers <= 1 {
        Searcher::new(l1, l2, prune, &incumbent).run(&root)?
    } else {
        let depth = root.len() + (config.workers * 8).next_power_of_two().trailing_zeros() as usize;
        let prefixes = search::split_prefixes(l1, l2, &root, depth);
        search::run_parallel(l1, l2, &prefixes, prune, &incumbent, config.workers)?
    };
    log::debug!("k*({l1},{l2}) = {} after {:?}", r.best, r.counters);

    let mut paths = r.witnesses;
    let mut capped = paths.len() >= config.witness_cap;
    if symmetric {
        let swapped: Vec<Vec<u8>> = paths.iter().map(|p| p.iter().map(|&c| 3 - c).collect()).collect();
        paths.extend(swapped);
        paths.sort();
        paths.dedup();
        capped |= paths.len() > config.witness_cap;
        paths.truncate(config.witness_cap);
    }
    if r.best < greedy || paths.is_empty() {
        return Err(Error::Internal(format!(
            "search for ({l1},{l2}) found no walk reaching the greedy value {greedy}"
        )));
    }
    Ok(SearchReport {
        targets,
        kstar: r.best,
        witnesses: paths.iter().map(|p| to_walk(p)).collect::<Result<_>>()?,
        witnesses_capped: capped,
        nodes: r.counters,
        wall_time: start.elapsed(),
    })
}

/// `m* = (k - 1) / k`.
pub fn mstar_of_kstar(k: u64) -> Result<GrowthRate> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    GrowthRate::new(k as i128 - 1, k as i128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recursion::k_of_walk;

    #[test]
    fn two_by_two() {
        let r = kstar_exhaustive((2, 2)).unwrap();
        assert_eq!(r.kstar, 4);
        let w: Vec<String> = r.witnesses.iter().map(|w| w.to_string()).collect();
        assert_eq!(w, vec!["1,2", "2,1"]);
        let b = kstar_branch_and_bound((2, 2)).unwrap();
        assert_eq!(b.kstar, 4);
        assert_eq!(b.witnesses, r.witnesses);
    }

    #[test]
    fn single_column() {
        for l in 1..8 {
            let r = kstar_exhaustive((l, 1)).unwrap();
            assert_eq!(r.kstar, l as u64);
            assert_eq!(r.witnesses.len(), 1);
            assert_eq!(kstar_branch_and_bound((l, 1)).unwrap().kstar, l as u64);
        }
    }

    #[test]
    fn forty_by_four_within_ceiling() {
        let r = kstar_exhaustive((40, 4)).unwrap();
        assert!(r.kstar >= 160 && r.kstar <= 172, "{}", r.kstar);
        assert_eq!(kstar_branch_and_bound((40, 4)).unwrap().kstar, r.kstar);
    }

    #[test]
    fn cap_is_enforced_with_count() {
        let e = kstar_exhaustive_with_cap((10, 10), 1000).unwrap_err();
        assert_eq!(e, Error::CapExceeded { count: 48620, cap: 1000 });
    }

    #[test]
    fn witnesses_evaluate_to_kstar() {
        let r = kstar_branch_and_bound((12, 12)).unwrap();
        assert_eq!(r.kstar, 144);
        for w in &r.witnesses {
            assert_eq!(k_of_walk(w).unwrap(), 144);
        }
        let mut sorted = r.witnesses.clone();
        sorted.sort_by(|a, b| a.entries().cmp(b.entries()));
        assert_eq!(sorted, r.witnesses);
    }

    #[test]
    fn parallel_matches_serial() {
        for t in [(9, 9), (11, 7), (5, 13)] {
            let s = kstar_branch_and_bound(t).unwrap();
            let p = kstar_branch_and_bound_with(t, &SearchConfig { workers: 3, ..SearchConfig::default() }).unwrap();
            assert_eq!(s.kstar, p.kstar);
            assert_eq!(s.witnesses, p.witnesses);
        }
    }

    #[test]
    fn mstar_examples() {
        assert_eq!(mstar_of_kstar(4).unwrap(), GrowthRate::new(3, 4).unwrap());
        assert_eq!(mstar_of_kstar(1).unwrap().to_string(), "0/1");
        assert_eq!(mstar_of_kstar(791).unwrap().to_string(), "790/791");
        assert!(mstar_of_kstar(0).is_err());
    }
}
