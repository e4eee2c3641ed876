//! Closed-form counting, the derived parameter formulas of the jump
//! constructions, and the good-subset counter.

mod bounded;
mod good_subsets;
mod params;
mod threshold;

pub use bounded::{big_binomial, f_multi, f_uniform};
pub use good_subsets::{count_good_subsets, GoodSubsetCount, GoodSubsetMode, DEFAULT_EXACT_BUDGET};
pub use params::{jump_parameters, layered_parameters, JumpParams};
pub use threshold::{m_threshold, threshold_conditions, ThresholdCheck};
