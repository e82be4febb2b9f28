//! Board-level simulation of the path avoidance game: Builder's list
//! strategy against a walk strategy or the greedy Painter.

mod board;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::walks::{choose_color, StrategyWalk};

pub use board::{GameBoard, PainterView};

/// A deterministic Painter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Painter {
    /// Leaves the box `[1, lambda]` along the walk and takes that step's color.
    Walk(StrategyWalk),
    /// Highest color that does not complete its target path, else color 1.
    Greedy,
}

/// Color chosen by `painter` for a vertex with the given view.
///
/// The walk Painter returns [`Error::GameOver`] when every color completes
/// its target.
pub fn painter_decide(painter: &Painter, view: &PainterView, targets: &[usize]) -> Result<usize> {
    match painter {
        Painter::Walk(w) => {
            if w.targets() != targets {
                return Err(Error::InvalidParameter(format!(
                    "walk {w} does not end at {targets:?}"
                )));
            }
            choose_color(w, &view.clamped).map(|(_, sigma)| sigma)
        }
        Painter::Greedy => Ok((1..=targets.len())
            .rev()
            .find(|&s| view.raw[s - 1] < targets[s - 1])
            .unwrap_or(1)),
    }
}

/// Tree template held in Builder's lists. Every vertex lists its neighbors
/// with smaller index, so the template can be copied vertex by vertex.
#[derive(Debug, Clone)]
struct Tree {
    colors: Vec<usize>,
    back: Vec<Vec<usize>>,
    /// A monochromatic path; its last vertex is where Builder attaches.
    path: Vec<usize>,
    /// Board vertex of the original, for reference.
    origin: usize,
}

/// Builder's lists `T_s`; entry `j` holds a tree with a monochromatic `P_j`
/// in color `s`, entry 0 being the null graph.
#[derive(Debug, Clone)]
pub struct BuilderState {
    lists: Vec<Vec<Option<Tree>>>,
}

impl BuilderState {
    fn new(colors: usize) -> Self {
        BuilderState {
            lists: vec![vec![None]; colors],
        }
    }

    /// Current walk position `nu`.
    pub fn position(&self) -> Vec<usize> {
        self.lists.iter().map(Vec::len).collect()
    }

    /// Sizes `v(T_{s,0}), ..., v(T_{s,nu_s - 1})`.
    pub fn sizes(&self, color: usize) -> Vec<usize> {
        self.lists[color - 1]
            .iter()
            .map(|t| t.as_ref().map_or(0, |t| t.colors.len()))
            .collect()
    }

    /// Board vertices of the listed originals for `color` (`None` for the
    /// null graph).
    pub fn origins(&self, color: usize) -> Vec<Option<usize>> {
        self.lists[color - 1].iter().map(|t| t.as_ref().map(|t| t.origin)).collect()
    }

    /// Split `(j1, j2)` with `j1 + j2 = nu_s - 1` of least size sum, smallest
    /// `j1` on ties.
    fn split(&self, color: usize) -> (usize, usize) {
        let sizes = self.sizes(color);
        let n = sizes.len() - 1;
        let j1 = (0..=n / 2)
            .min_by_key(|&j| sizes[j] + sizes[n - j])
            .expect("list is nonempty");
        (j1, n - j1)
    }
}

/// One vertex added to the board.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub new_vertex: usize,
    /// Earlier vertices joined to the new one.
    pub edges: Vec<usize>,
    pub color: usize,
    /// Size of the component containing the new vertex.
    pub component_size: usize,
    /// True for vertices of materialized tree copies, which are not game
    /// steps.
    pub copy: bool,
}

/// How a simulated game stopped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Outcome {
    /// Painter completed a monochromatic path of `length >= l_color`.
    BuilderWins { color: usize, length: usize },
    /// The next construction would exceed the tree size restriction.
    PainterSurvives { next_size: usize },
}

/// Record of a simulated game.
#[derive(Debug, Clone)]
pub struct GameResult {
    pub targets: Vec<usize>,
    /// Painter's decisions except the last one.
    pub alpha_prime: Vec<usize>,
    /// Size of the tree containing each step's new vertex.
    pub tree_sizes: Vec<usize>,
    pub outcome: Outcome,
    pub largest_component: usize,
    pub steps: usize,
    pub transcript: Vec<TranscriptEntry>,
    pub board: GameBoard,
}

impl GameResult {
    pub fn transcript_json(&self) -> Value {
        serde_json::to_value(&self.transcript).expect("transcript serializes")
    }
}

/// Copies `tree` onto the board and returns the board ids of its path.
fn materialize(
    board: &mut GameBoard,
    tree: &Tree,
    transcript: &mut Vec<TranscriptEntry>,
) -> Result<Vec<usize>> {
    let mut ids = Vec::with_capacity(tree.colors.len());
    for (c, back) in tree.colors.iter().zip(&tree.back) {
        let edges: Vec<usize> = back.iter().map(|&j| ids[j]).collect();
        let v = board.add_vertex(&edges, *c)?;
        transcript.push(TranscriptEntry {
            new_vertex: v,
            edges,
            color: *c,
            component_size: board.component_size(v),
            copy: true,
        });
        ids.push(v);
    }
    Ok(tree.path.iter().map(|&j| ids[j]).collect())
}

/// Appends `tree` to a template under construction, returning the index
/// offset of its vertices.
fn append_template(dst: &mut Tree, tree: &Tree) -> usize {
    let off = dst.colors.len();
    dst.colors.extend_from_slice(&tree.colors);
    dst.back
        .extend(tree.back.iter().map(|b| b.iter().map(|&j| j + off).collect()));
    off
}

/// Plays Builder's list strategy against `painter` until a monochromatic
/// target path appears or, with `cap`, until the next construction would
/// exceed it.
pub fn run_game(targets: &[usize], painter: &Painter, cap: Option<usize>) -> Result<GameResult> {
    let r = targets.len();
    if r == 0 {
        return Err(Error::NoColors);
    }
    if targets.contains(&0) {
        return Err(Error::InvalidParameter(format!(
            "targets must be positive, got {targets:?}"
        )));
    }
    let guard = targets.iter().map(|l| l - 1).sum::<usize>() + 1;
    let mut board = match cap {
        Some(c) => GameBoard::with_cap(r, c)?,
        None => GameBoard::new(r)?,
    };
    let mut state = BuilderState::new(r);
    let mut transcript = Vec::new();
    let mut alpha_prime = Vec::new();
    let mut tree_sizes = Vec::new();

    let outcome = loop {
        if tree_sizes.len() >= guard {
            return Err(Error::Internal(format!(
                "game on {targets:?} did not end within {guard} steps"
            )));
        }
        let splits: Vec<(usize, usize)> = (1..=r).map(|s| state.split(s)).collect();
        let next_size = 1 + (1..=r)
            .map(|s| {
                let sizes = state.sizes(s);
                let (j1, j2) = splits[s - 1];
                sizes[j1] + sizes[j2]
            })
            .sum::<usize>();
        if cap.is_some_and(|c| next_size > c) {
            break Outcome::PainterSurvives { next_size };
        }

        // Fresh copies of the chosen trees, and the template of the tree the
        // new vertex will complete.
        let mut template = Tree {
            colors: Vec::new(),
            back: Vec::new(),
            path: Vec::new(),
            origin: 0,
        };
        let mut attach = Vec::new();
        let mut template_attach = Vec::new();
        let mut arms: Vec<[Vec<usize>; 2]> = Vec::with_capacity(r);
        for s in 1..=r {
            let (j1, j2) = splits[s - 1];
            let mut pair: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
            for (slot, j) in [j1, j2].into_iter().enumerate() {
                if let Some(tree) = &state.lists[s - 1][j] {
                    let path = materialize(&mut board, tree, &mut transcript)?;
                    let off = append_template(&mut template, tree);
                    attach.push(*path.last().expect("trees carry a nonempty path"));
                    template_attach.push(off + tree.path.last().expect("nonempty path"));
                    pair[slot] = tree.path.iter().map(|&i| i + off).collect();
                }
            }
            arms.push(pair);
        }

        let view = board.longest_completed_paths(&attach, targets)?;
        let color = match painter_decide(painter, &view, targets) {
            Ok(c) => c,
            Err(Error::GameOver { .. }) => 1,
            Err(e) => return Err(e),
        };
        let v = board.add_vertex(&attach, color)?;
        let size = board.component_size(v);
        transcript.push(TranscriptEntry {
            new_vertex: v,
            edges: attach.clone(),
            color,
            component_size: size,
            copy: false,
        });
        tree_sizes.push(size);

        let completed = view.raw[color - 1];
        if completed >= targets[color - 1] {
            break Outcome::BuilderWins { color, length: completed };
        }
        let nu = state.lists[color - 1].len();
        if nu >= targets[color - 1] {
            return Err(Error::Internal(format!(
                "Builder's list for color {color} is already full"
            )));
        }
        let vi = template.colors.len();
        template.colors.push(color);
        template.back.push(template_attach);
        let [p1, p2] = &arms[color - 1];
        let mut path = p1.clone();
        path.push(vi);
        path.extend(p2.iter().rev());
        template.path = path;
        template.origin = v;
        state.lists[color - 1].push(Some(template));
        alpha_prime.push(color);
    };

    Ok(GameResult {
        targets: targets.to_vec(),
        alpha_prime,
        steps: tree_sizes.len(),
        tree_sizes,
        outcome,
        largest_component: board.largest_component(),
        transcript,
        board,
    })
}

/// Replays a transcript on a fresh board, calling `visit` after every entry.
pub fn replay<F>(colors: usize, transcript: &[TranscriptEntry], mut visit: F) -> Result<GameBoard>
where
    F: FnMut(&GameBoard, &TranscriptEntry) -> Result<()>,
{
    let mut board = GameBoard::new(colors)?;
    for e in transcript {
        let v = board.add_vertex(&e.edges, e.color)?;
        if v != e.new_vertex || board.component_size(v) != e.component_size {
            return Err(Error::InvalidParameter(format!(
                "transcript entry for vertex {} does not replay",
                e.new_vertex
            )));
        }
        visit(&board, e)?;
    }
    Ok(board)
}

/// First failure of the strategy invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantViolation {
    /// Game step (copies excluded) after which the check failed.
    pub step: usize,
    pub color: usize,
    /// Length of the monochromatic path, in vertices.
    pub t: usize,
    pub component_size: usize,
    pub required: i128,
}

/// Checks after every game step but the last that each monochromatic `P_t`
/// in color `s` lies in a component of at least `x[s-1][t]` vertices.
/// Returns the first violation, or `None` if the invariant holds.
pub fn check_strategy_invariant(
    colors: usize,
    transcript: &[TranscriptEntry],
    x: &[Vec<i128>],
) -> Result<Option<InvariantViolation>> {
    if x.len() != colors {
        return Err(Error::UnsupportedArity {
            expected: colors,
            found: x.len(),
        });
    }
    let total = transcript.iter().filter(|e| !e.copy).count();
    let mut step = 0;
    let mut found = None;
    replay(colors, transcript, |board, e| {
        if e.copy || found.is_some() {
            return Ok(());
        }
        step += 1;
        if step == total {
            return Ok(());
        }
        for (root, longest) in board.longest_monochromatic_paths() {
            let size = board.component_size(root);
            for s in 1..=colors {
                let xs = &x[s - 1];
                let top = longest[s - 1].min(xs.len() - 1);
                if let Some(t) = (1..=top).find(|&t| (size as i128) < xs[t]) {
                    found = Some(InvariantViolation {
                        step: step - 1,
                        color: s,
                        t,
                        component_size: size,
                        required: xs[t],
                    });
                    return Ok(());
                }
            }
        }
        Ok(())
    })?;
    Ok(found)
}
