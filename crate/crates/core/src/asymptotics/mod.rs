//! Growth rates of the fixed-offset recurrence and walk families whose
//! rates approach the known constants.

mod families;
mod period;
mod surd;

pub use families::{
    bootstrap_rate, bootstrap_walk, delta_family, delta_family_lengths, delta_family_limit, symmetric_lb_side,
    symmetric_lb_walk, BootstrapParams, MAX_GENERATED_LEN,
};
pub use period::{extend_recurrence, period_analysis, PeriodAnalysis, MAX_EXTENSION};
pub use surd::{at_least_half_power, at_most_log3_power, sig9, QuadraticSurd};

use crate::error::Result;
use crate::walks::{enumerate_walks, StrategyWalk};

/// Walks in `W(l, c)` whose last step has color 2, the set over which the
/// growth rate for `c` rows is a supremum.
pub fn qualifying_walks(l: usize, c: usize) -> Result<impl Iterator<Item = StrategyWalk>> {
    Ok(enumerate_walks(&[l, c])?.filter(|w| w.last() == Some(2)))
}
