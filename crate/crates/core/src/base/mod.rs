//! Minimal bases, regular suborbits and the probability that a random
//! tuple is a base.

mod probability;
mod regular;
mod search;

pub use probability::{base_probability, fixed_point_ratio_bound, ProbabilityEstimate};
pub use regular::{
    reg_l_m, reg_l_m_exhaustive, regular_double_cosets, regular_orbits, regular_suborbits,
    RegularOrbitCount,
};
pub use search::{
    base_size_exact, greedy_base, information_bound, is_base, BaseMethod, BaseResult,
    DEFAULT_NODE_BUDGET,
};
