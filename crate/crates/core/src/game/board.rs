//! Forest board with union-find component tracking.

use crate::error::{Error, Result};

/// Clamped and raw lengths of the longest monochromatic paths a new vertex
/// would complete in each color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PainterView {
    /// `lambda'_s`, in vertices.
    pub raw: Vec<usize>,
    /// `lambda_s = min(lambda'_s, l_s)`.
    pub clamped: Vec<usize>,
}

/// Vertices colored in `1..=r` and edges forming a forest.
#[derive(Debug, Clone)]
pub struct GameBoard {
    colors_count: usize,
    color: Vec<usize>,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    parent: Vec<usize>,
    size: Vec<usize>,
    /// Tree size restriction; `None` means unrestricted.
    cap: Option<usize>,
}

impl GameBoard {
    pub fn new(colors: usize) -> Result<Self> {
        if colors == 0 {
            return Err(Error::NoColors);
        }
        Ok(GameBoard {
            colors_count: colors,
            color: Vec::new(),
            adj: Vec::new(),
            edges: Vec::new(),
            parent: Vec::new(),
            size: Vec::new(),
            cap: None,
        })
    }

    /// Board whose components may not exceed `cap` vertices.
    pub fn with_cap(colors: usize, cap: usize) -> Result<Self> {
        let mut b = Self::new(colors)?;
        b.cap = Some(cap);
        Ok(b)
    }

    pub fn colors(&self) -> usize {
        self.colors_count
    }

    pub fn vertex_count(&self) -> usize {
        self.color.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn color(&self, v: usize) -> usize {
        self.color[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    /// Representative vertex of the component containing `v`.
    pub fn component(&self, v: usize) -> usize {
        self.find(v)
    }

    pub fn component_size(&self, v: usize) -> usize {
        self.size[self.find(v)]
    }

    pub fn largest_component(&self) -> usize {
        (0..self.vertex_count())
            .filter(|&v| self.parent[v] == v)
            .map(|v| self.size[v])
            .max()
            .unwrap_or(0)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            return Err(Error::InvalidParameter(format!(
                "vertex {v} is not on the board of {} vertices",
                self.vertex_count()
            )));
        }
        Ok(())
    }

    fn check_distinct(&self, attach: &[usize]) -> Result<()> {
        for &u in attach {
            self.check_vertex(u)?;
        }
        let mut roots: Vec<usize> = attach.iter().map(|&u| self.find(u)).collect();
        roots.sort_unstable();
        if roots.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::CycleViolation(attach.to_vec()));
        }
        Ok(())
    }

    /// Size of the component a new vertex joined to `attach` would form.
    pub fn merged_size(&self, attach: &[usize]) -> Result<usize> {
        self.check_distinct(attach)?;
        Ok(1 + attach.iter().map(|&u| self.component_size(u)).sum::<usize>())
    }

    /// Adds a vertex of `color` joined to every vertex in `attach`.
    pub fn add_vertex(&mut self, attach: &[usize], color: usize) -> Result<usize> {
        if color == 0 || color > self.colors_count {
            return Err(Error::InvalidColor {
                index: self.vertex_count(),
                value: color,
                colors: self.colors_count,
            });
        }
        let merged = self.merged_size(attach)?;
        if let Some(cap) = self.cap {
            if merged > cap {
                return Err(Error::InvalidParameter(format!(
                    "component of {merged} vertices exceeds the tree size restriction {cap}"
                )));
            }
        }
        let v = self.vertex_count();
        self.color.push(color);
        self.adj.push(attach.to_vec());
        self.parent.push(v);
        self.size.push(1);
        for &u in attach {
            self.adj[u].push(v);
            self.edges.push((u, v));
            let r = self.find(u);
            self.parent[r] = v;
        }
        self.size[v] = merged;
        Ok(v)
    }

    /// Vertices on a longest path of `color` starting at `start` and staying
    /// inside the color class, `start` first. Empty if `start` has another
    /// color.
    pub fn longest_path_from(&self, start: usize, color: usize) -> Vec<usize> {
        if self.color[start] != color {
            return Vec::new();
        }
        let (far, prev) = self.farthest(start, color);
        let mut path = vec![far];
        let mut v = far;
        while let Some(p) = prev[v] {
            path.push(p);
            v = p;
        }
        path.reverse();
        path
    }

    /// Farthest vertex from `start` in its color class, with the BFS tree.
    fn farthest(&self, start: usize, color: usize) -> (usize, Vec<Option<usize>>) {
        let mut prev = vec![None; self.vertex_count()];
        let mut seen = vec![false; self.vertex_count()];
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        let mut last = start;
        while let Some(v) = queue.pop_front() {
            last = v;
            for &u in &self.adj[v] {
                if !seen[u] && self.color[u] == color {
                    seen[u] = true;
                    prev[u] = Some(v);
                    queue.push_back(u);
                }
            }
        }
        (last, prev)
    }

    /// `lambda'` and `lambda` for a new vertex joined to `attach`.
    pub fn longest_completed_paths(&self, attach: &[usize], targets: &[usize]) -> Result<PainterView> {
        if targets.len() != self.colors_count {
            return Err(Error::UnsupportedArity {
                expected: self.colors_count,
                found: targets.len(),
            });
        }
        self.check_distinct(attach)?;
        let mut raw = Vec::with_capacity(self.colors_count);
        for s in 1..=self.colors_count {
            // Neighbors sit in distinct trees, so the two longest arms combine.
            let mut top = [0usize; 2];
            for &u in attach {
                let len = self.longest_path_from(u, s).len();
                if len > top[0] {
                    top = [len, top[0]];
                } else if len > top[1] {
                    top[1] = len;
                }
            }
            raw.push(1 + top[0] + top[1]);
        }
        let clamped = raw.iter().zip(targets).map(|(&a, &l)| a.min(l)).collect();
        Ok(PainterView { raw, clamped })
    }

    /// For every component (by representative) and color, the number of
    /// vertices of a longest monochromatic path in it.
    pub fn longest_monochromatic_paths(&self) -> Vec<(usize, Vec<usize>)> {
        let n = self.vertex_count();
        let mut best: std::collections::BTreeMap<usize, Vec<usize>> = std::collections::BTreeMap::new();
        for v in 0..n {
            if self.parent[v] == v {
                best.insert(v, vec![0; self.colors_count]);
            }
        }
        let mut done = vec![false; n];
        for v in 0..n {
            if done[v] {
                continue;
            }
            let s = self.color[v];
            // Double sweep for the diameter of the color class tree.
            let (a, prev) = self.farthest(v, s);
            for (u, p) in prev.iter().enumerate() {
                if p.is_some() {
                    done[u] = true;
                }
            }
            done[v] = true;
            let len = self.longest_path_from(a, s).len();
            let entry = best.get_mut(&self.find(v)).expect("root present");
            entry[s - 1] = entry[s - 1].max(len);
        }
        best.into_iter().collect()
    }

    /// Recomputes components by traversal and compares them with the
    /// union-find bookkeeping, the forest property and the size restriction.
    pub fn check_structure(&self) -> Result<()> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut components = 0;
        for v in 0..n {
            if comp[v] != usize::MAX {
                continue;
            }
            let mut count = 0;
            let mut stack = vec![v];
            comp[v] = v;
            while let Some(u) = stack.pop() {
                count += 1;
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = v;
                        stack.push(w);
                    }
                }
            }
            components += 1;
            if self.component_size(v) != count {
                return Err(Error::Internal(format!(
                    "component of vertex {v} has {count} vertices, bookkeeping says {}",
                    self.component_size(v)
                )));
            }
            if let Some(cap) = self.cap {
                if count > cap {
                    return Err(Error::Internal(format!(
                        "component of vertex {v} has {count} vertices, above {cap}"
                    )));
                }
            }
        }
        if self.edges.len() + components != n {
            return Err(Error::Internal(format!(
                "{} edges on {n} vertices in {components} components is not a forest",
                self.edges.len()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isolated_vertex_view() {
        let b = GameBoard::new(2).unwrap();
        let v = b.longest_completed_paths(&[], &[3, 3]).unwrap();
        assert_eq!(v.raw, vec![1, 1]);
    }

    #[test]
    fn single_neighbor_view() {
        let mut b = GameBoard::new(2).unwrap();
        let u = b.add_vertex(&[], 1).unwrap();
        let v = b.longest_completed_paths(&[u], &[2, 2]).unwrap();
        assert_eq!(v.raw, vec![2, 1]);
    }

    #[test]
    fn joins_two_arms() {
        let mut b = GameBoard::new(2).unwrap();
        let a0 = b.add_vertex(&[], 1).unwrap();
        let a1 = b.add_vertex(&[a0], 1).unwrap();
        let c0 = b.add_vertex(&[], 1).unwrap();
        let d = b.add_vertex(&[], 2).unwrap();
        let v = b.longest_completed_paths(&[a1, c0, d], &[3, 3]).unwrap();
        assert_eq!(v.raw, vec![4, 2]);
        assert_eq!(v.clamped, vec![3, 2]);
        assert_eq!(b.longest_path_from(a1, 1), vec![a1, a0]);
    }

    #[test]
    fn rejects_cycles_and_tracks_sizes() {
        let mut b = GameBoard::new(2).unwrap();
        let a = b.add_vertex(&[], 1).unwrap();
        let c = b.add_vertex(&[a], 2).unwrap();
        assert_eq!(b.add_vertex(&[a, c], 1), Err(Error::CycleViolation(vec![a, c])));
        assert!(b.longest_completed_paths(&[a, a], &[2, 2]).is_err());
        let d = b.add_vertex(&[], 2).unwrap();
        let e = b.add_vertex(&[c, d], 1).unwrap();
        assert_eq!(b.component_size(a), 4);
        assert_eq!(b.component(e), b.component(a));
        assert_eq!(b.largest_component(), 4);
        b.check_structure().unwrap();
        let paths = b.longest_monochromatic_paths();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].1, vec![1, 1]);
    }

    #[test]
    fn cap_is_enforced() {
        let mut b = GameBoard::with_cap(1, 2).unwrap();
        let a = b.add_vertex(&[], 1).unwrap();
        let c = b.add_vertex(&[a], 1).unwrap();
        assert!(b.add_vertex(&[c], 1).is_err());
        assert_eq!(b.longest_monochromatic_paths()[0].1, vec![2]);
    }
}
