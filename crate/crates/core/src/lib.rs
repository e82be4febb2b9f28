pub mod asymptotics;
pub mod error;
pub mod game;
pub mod rational;
pub mod recursion;
pub mod solver;
pub mod walks;

pub use error::{Error, Result};
pub use game::{
    check_strategy_invariant, painter_decide, run_game, GameBoard, GameResult, Outcome, Painter, PainterView,
};
pub use rational::GrowthRate;
pub use recursion::{beta_of_walk, delta_of_walk, evaluate, k_of_walk, RecursionTrace};
pub use solver::{
    kstar_branch_and_bound, kstar_branch_and_bound_with, kstar_exhaustive, kstar_exhaustive_with_cap,
    mstar_of_kstar, verify_table, verify_table_range, SearchConfig, SearchReport,
};
pub use walks::{
    choose_color, enumerate_walks, greedy_walk, make_walk, positions, swap_colors, StrategyWalk,
    WalkPosition,
};
