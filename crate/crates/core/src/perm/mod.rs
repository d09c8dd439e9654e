//! Permutations and the core group algorithms.

mod backtrack;
mod blocks;
mod chain;
mod classes;
mod group;
mod orbits;
mod permutation;

pub use backtrack::{coloring_stabilizer, coloring_stabilizer_is_trivial, setwise_stabilizer};
pub use blocks::{is_k_transitive, is_primitive, minimal_block};
pub use chain::{build_chain, ChainOptions, StabChain, DEFAULT_SEED};
pub use classes::{
    conjugacy_classes, enumerate_elements, filter_subgroup, minimal_degree, ConjugacyClass,
    ConjugacyClasses,
};
pub(crate) use classes::is_prime;
pub use group::{Orbit, PermutationGroup, DEFAULT_ENUMERATION_BOUND};
pub use orbits::{OrbitPartition, SchreierTree, UnionFind};
pub use permutation::Permutation;
