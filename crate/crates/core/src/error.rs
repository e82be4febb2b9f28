use thiserror::Error;

/// Errors produced by the walk, recursion, search and game routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("entry {value} at index {index} is not a color in 1..={colors}")]
    InvalidColor {
        index: usize,
        value: usize,
        colors: usize,
    },

    #[error("number of colors must be at least 1")]
    NoColors,

    #[error("operation requires {expected} colors, walk has {found}")]
    UnsupportedArity { expected: usize, found: usize },

    #[error("malformed walk text at token {token:?}: {reason}")]
    WalkSyntax { token: String, reason: String },

    #[error("position {lambda:?} is outside the target box {targets:?}")]
    PositionOutOfRange {
        lambda: Vec<usize>,
        targets: Vec<usize>,
    },

    /// Every color would complete its forbidden path: the game is lost no
    /// matter which color is chosen.
    #[error("position equals the targets {targets:?}; every color loses")]
    GameOver { targets: Vec<usize> },

    #[error("integer overflow while evaluating step {step}")]
    Overflow { step: usize },

    #[error("search space has {count} walks, above the cap of {cap}")]
    CapExceeded { count: u128, cap: u128 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("attach set {0:?} does not lie in pairwise distinct components")]
    CycleViolation(Vec<usize>),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
