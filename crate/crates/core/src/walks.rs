//! Strategy walks: finite color sequences read as monotone lattice walks.
//!
//! A walk over `r` colors starts at `(1, ..., 1)` and every entry `s` moves
//! one unit along coordinate `s`. A walk in `W(l_1, ..., l_r)` uses color `s`
//! exactly `l_s - 1` times and therefore ends at `(l_1, ..., l_r)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A validated strategy walk. Colors are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrategyWalk {
    colors: usize,
    entries: Vec<usize>,
    targets: Vec<usize>,
}

/// The lattice point reached after `step` entries of a walk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalkPosition {
    pub step: usize,
    pub coords: Vec<usize>,
}

/// Builds a walk over `colors` colors, deriving the targets from the color
/// counts.
pub fn make_walk(colors: usize, entries: Vec<usize>) -> Result<StrategyWalk> {
    if colors == 0 {
        return Err(Error::NoColors);
    }
    let mut targets = vec![1; colors];
    for (index, &value) in entries.iter().enumerate() {
        if value == 0 || value > colors {
            return Err(Error::InvalidColor {
                index,
                value,
                colors,
            });
        }
        targets[value - 1] += 1;
    }
    Ok(StrategyWalk {
        colors,
        entries,
        targets,
    })
}

impl StrategyWalk {
    /// The empty walk in `W(1, ..., 1)`.
    pub fn empty(colors: usize) -> Result<Self> {
        make_walk(colors, Vec::new())
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    /// Number of steps, `d = sum_s (l_s - 1)`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Checks membership in `W(targets)`.
    pub fn is_in(&self, targets: &[usize]) -> bool {
        self.targets == targets
    }

    /// Color of the last step, if any.
    pub fn last(&self) -> Option<usize> {
        self.entries.last().copied()
    }

    /// Appends `count` copies of `color`.
    pub fn extend_run(&mut self, color: usize, count: usize) -> Result<()> {
        if color == 0 || color > self.colors {
            return Err(Error::InvalidColor {
                index: self.entries.len(),
                value: color,
                colors: self.colors,
            });
        }
        self.entries.extend(std::iter::repeat(color).take(count));
        self.targets[color - 1] += count;
        Ok(())
    }

    /// Concatenation `self ∘ other`.
    pub fn concat(&self, other: &StrategyWalk) -> Result<StrategyWalk> {
        let colors = self.colors.max(other.colors);
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        make_walk(colors, entries)
    }

    /// The walk truncated to its first `len` entries.
    pub fn prefix(&self, len: usize) -> StrategyWalk {
        let entries = self.entries[..len.min(self.entries.len())].to_vec();
        make_walk(self.colors, entries).expect("prefix of a valid walk is valid")
    }

    /// Run-length decomposition `[(color, count), ...]`.
    pub fn runs(&self) -> Vec<(usize, usize)> {
        let mut runs: Vec<(usize, usize)> = Vec::new();
        for &c in &self.entries {
            match runs.last_mut() {
                Some((color, count)) if *color == c => *count += 1,
                _ => runs.push((c, 1)),
            }
        }
        runs
    }

    /// Parses the run-length text format with an explicit number of colors.
    pub fn parse_with_colors(text: &str, colors: usize) -> Result<StrategyWalk> {
        let entries = parse_runs(text)?;
        make_walk(colors, entries)
    }
}

/// Lattice positions `nu_0, ..., nu_d` of a walk.
pub fn positions(walk: &StrategyWalk) -> Vec<WalkPosition> {
    let mut coords = vec![1; walk.colors];
    let mut out = Vec::with_capacity(walk.len() + 1);
    out.push(WalkPosition {
        step: 0,
        coords: coords.clone(),
    });
    for (i, &c) in walk.entries.iter().enumerate() {
        coords[c - 1] += 1;
        out.push(WalkPosition {
            step: i + 1,
            coords: coords.clone(),
        });
    }
    out
}

/// The greedy walk `(r)^{l_r - 1} ∘ ... ∘ (1)^{l_1 - 1}`.
pub fn greedy_walk(targets: &[usize]) -> Result<StrategyWalk> {
    validate_targets(targets)?;
    let colors = targets.len().max(1);
    let mut entries = Vec::with_capacity(targets.iter().map(|l| l - 1).sum());
    for (s, &l) in targets.iter().enumerate().rev() {
        entries.extend(std::iter::repeat(s + 1).take(l - 1));
    }
    make_walk(colors, entries)
}

/// Exchanges colors 1 and 2 of a two-color walk.
pub fn swap_colors(walk: &StrategyWalk) -> Result<StrategyWalk> {
    if walk.colors != 2 {
        return Err(Error::UnsupportedArity {
            expected: 2,
            found: walk.colors,
        });
    }
    let entries = walk.entries.iter().map(|&c| 3 - c).collect();
    make_walk(2, entries)
}

/// The color choice of the walk strategy at clamped path lengths `lambda`.
///
/// Returns the index `i` of the first step that leaves the box
/// `[1, lambda_1] x ... x [1, lambda_r]` together with its color `sigma`. At
/// that step `nu_{i,sigma} = lambda_sigma` and `nu_{i,s} <= lambda_s` for all
/// other colors, and no other index has this property.
pub fn choose_color(walk: &StrategyWalk, lambda: &[usize]) -> Result<(usize, usize)> {
    let targets = walk.targets();
    let out_of_range = lambda.len() != targets.len()
        || lambda
            .iter()
            .zip(targets)
            .any(|(&l, &t)| l == 0 || l > t);
    if out_of_range {
        return Err(Error::PositionOutOfRange {
            lambda: lambda.to_vec(),
            targets: targets.to_vec(),
        });
    }
    if lambda == targets {
        return Err(Error::GameOver {
            targets: targets.to_vec(),
        });
    }
    let mut nu = vec![1; walk.colors];
    for (i, &sigma) in walk.entries.iter().enumerate() {
        if nu[sigma - 1] == lambda[sigma - 1] {
            return Ok((i, sigma));
        }
        nu[sigma - 1] += 1;
    }
    Err(Error::Internal(format!(
        "walk {walk} never leaves the box {lambda:?}"
    )))
}

/// Number of walks in `W(targets)`: the multinomial coefficient of `d` over
/// `(l_1 - 1, ..., l_r - 1)`. `None` on overflow.
pub fn count_walks(targets: &[usize]) -> Option<u128> {
    let mut total: u128 = 1;
    let mut n: u128 = 0;
    for &l in targets {
        let k = l.checked_sub(1)? as u128;
        // total *= C(n + k, k), built incrementally so every division is exact.
        for i in 1..=k {
            n += 1;
            total = total.checked_mul(n)? / i;
        }
    }
    Some(total)
}

/// All walks of `W(targets)` in lexicographic order of their entries.
pub fn enumerate_walks(targets: &[usize]) -> Result<WalkIter> {
    validate_targets(targets)?;
    let colors = targets.len().max(1);
    let mut first = Vec::new();
    for (s, &l) in targets.iter().enumerate() {
        first.extend(std::iter::repeat(s + 1).take(l - 1));
    }
    Ok(WalkIter {
        colors,
        next: Some(first),
    })
}

fn validate_targets(targets: &[usize]) -> Result<()> {
    if let Some(pos) = targets.iter().position(|&l| l == 0) {
        return Err(Error::InvalidParameter(format!(
            "target l_{} must be at least 1",
            pos + 1
        )));
    }
    Ok(())
}

/// Lexicographic multiset-permutation stream; see [`enumerate_walks`].
#[derive(Debug, Clone)]
pub struct WalkIter {
    colors: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for WalkIter {
    type Item = StrategyWalk;

    fn next(&mut self) -> Option<StrategyWalk> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(make_walk(self.colors, current).expect("permutation of a valid walk"))
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn parse_runs(text: &str) -> Result<Vec<usize>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut entries = Vec::new();
    if compact.is_empty() {
        return Ok(entries);
    }
    for token in compact.split(',') {
        let syntax = |reason: &str| Error::WalkSyntax {
            token: token.to_string(),
            reason: reason.to_string(),
        };
        let (color, count) = match token.split_once('^') {
            Some((c, n)) => (c, n),
            None => (token, "1"),
        };
        if color.is_empty() || !color.bytes().all(|b| b.is_ascii_digit()) {
            return Err(syntax("color must be a decimal integer"));
        }
        if count.is_empty() || !count.bytes().all(|b| b.is_ascii_digit()) {
            return Err(syntax("repetition count must be a decimal integer"));
        }
        let color: usize = color.parse().map_err(|_| syntax("color out of range"))?;
        let count: usize = count.parse().map_err(|_| syntax("count out of range"))?;
        if color == 0 {
            return Err(syntax("colors are 1-based"));
        }
        entries.extend(std::iter::repeat(color).take(count));
    }
    Ok(entries)
}

impl fmt::Display for StrategyWalk {
    /// Run-length text, e.g. `1^6,2^2,1^7,2,1^14,2^24`. Empty walks print
    /// as the empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (color, count)) in self.runs().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if count == 1 {
                write!(f, "{color}")?;
            } else {
                write!(f, "{color}^{count}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for StrategyWalk {
    type Err = Error;

    /// Parses run-length text; the number of colors is the largest color
    /// mentioned, but at least 2.
    fn from_str(s: &str) -> Result<Self> {
        let entries = parse_runs(s)?;
        let colors = entries.iter().copied().max().unwrap_or(0).max(2);
        make_walk(colors, entries)
    }
}

impl Serialize for StrategyWalk {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for StrategyWalk {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig2() -> StrategyWalk {
        make_walk(2, vec![1, 1, 2, 2, 1, 1, 1, 2]).unwrap()
    }

    #[test]
    fn make_walk_derives_targets() {
        assert!(make_walk(2, vec![1, 2]).unwrap().is_in(&[2, 2]));
        let empty = make_walk(2, vec![]).unwrap();
        assert!(empty.is_in(&[1, 1]));
        assert_eq!(empty.len(), 0);
        assert_eq!(fig2().targets(), &[6, 4]);
    }

    #[test]
    fn make_walk_names_bad_index() {
        let err = make_walk(2, vec![1, 2, 3, 1]).unwrap_err();
        assert_eq!(
            err,
            Error::InvalidColor {
                index: 2,
                value: 3,
                colors: 2
            }
        );
        assert!(matches!(
            make_walk(2, vec![0]),
            Err(Error::InvalidColor { index: 0, .. })
        ));
        assert_eq!(make_walk(0, vec![]).unwrap_err(), Error::NoColors);
    }

    #[test]
    fn positions_count_prefix_occurrences() {
        let p = positions(&fig2());
        assert_eq!(p[0].coords, vec![1, 1]);
        assert_eq!(p[3].coords, vec![3, 2]);
        assert_eq!(p[8].coords, vec![6, 4]);
        assert_eq!(p.len(), 9);

        let p = positions(&StrategyWalk::empty(2).unwrap());
        assert_eq!(p, vec![WalkPosition { step: 0, coords: vec![1, 1] }]);

        let g = greedy_walk(&[5, 3]).unwrap();
        let p = positions(&g);
        assert_eq!(p[2].coords, vec![1, 3]);
        assert_eq!(p[6].coords, vec![5, 3]);
    }

    #[test]
    fn enumerate_small_cases() {
        let all: Vec<_> = enumerate_walks(&[2, 2]).unwrap().map(|w| w.entries().to_vec()).collect();
        assert_eq!(all, vec![vec![1, 2], vec![2, 1]]);
        let all: Vec<_> = enumerate_walks(&[1, 1]).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_empty());
        assert_eq!(enumerate_walks(&[]).unwrap().count(), 1);
        for l in 1..=8 {
            let n = enumerate_walks(&[l, l]).unwrap().count() as u128;
            assert_eq!(n, count_walks(&[l, l]).unwrap());
        }
    }

    #[test]
    fn enumeration_is_lexicographic_and_distinct() {
        let all: Vec<_> = enumerate_walks(&[3, 2, 3]).unwrap().collect();
        assert_eq!(all.len() as u128, count_walks(&[3, 2, 3]).unwrap());
        for pair in all.windows(2) {
            assert!(pair[0].entries() < pair[1].entries());
        }
        assert!(all.iter().all(|w| w.is_in(&[3, 2, 3])));
    }

    #[test]
    fn greedy_walk_examples() {
        assert_eq!(greedy_walk(&[5, 3]).unwrap().entries(), &[2, 2, 1, 1, 1, 1]);
        assert!(greedy_walk(&[1, 1]).unwrap().is_empty());
        assert_eq!(greedy_walk(&[2, 2, 2]).unwrap().entries(), &[3, 2, 1]);
        assert!(greedy_walk(&[0, 2]).is_err());
    }

    #[test]
    fn swap_colors_examples() {
        let w = make_walk(2, vec![1, 2, 2]).unwrap();
        assert_eq!(swap_colors(&w).unwrap().entries(), &[2, 1, 1]);
        assert_eq!(swap_colors(&swap_colors(&w).unwrap()).unwrap(), w);
        let three = make_walk(3, vec![1, 2, 3]).unwrap();
        assert_eq!(
            swap_colors(&three).unwrap_err(),
            Error::UnsupportedArity {
                expected: 2,
                found: 3
            }
        );
    }

    #[test]
    fn choose_color_examples() {
        assert_eq!(choose_color(&fig2(), &[3, 2]).unwrap(), (3, 2));
        assert_eq!(choose_color(&fig2(), &[1, 1]).unwrap(), (0, 1));
        let g = greedy_walk(&[5, 3]).unwrap();
        assert_eq!(choose_color(&g, &[4, 3]).unwrap(), (5, 1));
    }

    #[test]
    fn choose_color_errors() {
        let w = fig2();
        assert!(matches!(choose_color(&w, &[6, 4]), Err(Error::GameOver { .. })));
        assert!(matches!(
            choose_color(&w, &[7, 1]),
            Err(Error::PositionOutOfRange { .. })
        ));
        assert!(matches!(
            choose_color(&w, &[0, 1]),
            Err(Error::PositionOutOfRange { .. })
        ));
        assert!(matches!(
            choose_color(&w, &[1]),
            Err(Error::PositionOutOfRange { .. })
        ));
    }

    #[test]
    fn run_length_text() {
        let w: StrategyWalk = "1^6,2^2,1^7,2,1^14,2^24".parse().unwrap();
        assert!(w.is_in(&[28, 28]));
        assert_eq!(w.to_string(), "1^6,2^2,1^7,2,1^14,2^24");
        let spaced: StrategyWalk = " 1 ^ 6 , 2^2,1^7 ,2, 1^14,2^24 ".parse().unwrap();
        assert_eq!(spaced, w);
        let empty: StrategyWalk = "".parse().unwrap();
        assert!(empty.is_in(&[1, 1]));
        assert_eq!(empty.to_string(), "");
        // Zero-length runs are allowed and vanish.
        let w: StrategyWalk = "1^0,2".parse().unwrap();
        assert_eq!(w.entries(), &[2]);
    }

    #[test]
    fn run_length_text_errors() {
        for bad in ["1^", "^3", "a", "1,,2", "0^2", "1^x", "-1"] {
            assert!(
                matches!(bad.parse::<StrategyWalk>(), Err(Error::WalkSyntax { .. })),
                "{bad}"
            );
        }
        assert!(matches!(
            StrategyWalk::parse_with_colors("1,3", 2),
            Err(Error::InvalidColor { index: 1, .. })
        ));
    }

    #[test]
    fn count_walks_matches_binomials() {
        assert_eq!(count_walks(&[2, 2]), Some(2));
        assert_eq!(count_walks(&[40, 4]), Some(11480));
        assert_eq!(count_walks(&[1, 1]), Some(1));
        assert_eq!(count_walks(&[28, 28]), Some(1_946_939_425_648_112));
    }
}
