//! Distinguishing partitions of permutation groups and regular orbits on
//! the power set.

mod partitions;
mod powerset;
mod stirling;

pub use partitions::{
    check_dagger, count_ordered_colorings, count_tm, distinguishing_number, distinguishing_partitions,
    find_distinguishing,
    is_distinguishing, profile, DistinguishingProfile, SetPartition,
};
pub use powerset::{check_ddagger, power_set_regular_orbits, x_regular_orbits, PowerSetOrbits};
pub use stirling::{bounds_check, stirling2};

use crate::error::{Error, Result};
use crate::perm::{coloring_stabilizer_is_trivial, enumerate_elements, PermutationGroup};

/// Largest group whose elements are tabulated.
pub const ELEMENT_TABLE_LIMIT: u64 = 10_000;
/// Largest ground set for exact partition enumeration.
pub const MAX_PARTITION_K: usize = 12;
/// Largest ground set for subset sweeps.
pub const MAX_SUBSET_K: usize = 20;

/// Decides whether colorings and subsets have trivial stabilizer, using an
/// element table for small groups and backtracking otherwise.
pub(crate) struct Checker {
    pub(crate) k: usize,
    group: PermutationGroup,
    all: Option<Vec<Vec<u32>>>,
    prime: Option<Vec<Vec<u32>>>,
}

impl Checker {
    pub(crate) fn new(p: &PermutationGroup) -> Result<Self> {
        let (all, prime) = match p.order_u64() {
            Some(n) if n <= ELEMENT_TABLE_LIMIT => {
                let elems = enumerate_elements(p, n)?;
                let prime = elems
                    .iter()
                    .filter(|g| crate::perm::is_prime(g.order()))
                    .map(|g| g.images().to_vec())
                    .collect();
                let all = elems
                    .into_iter()
                    .filter(|g| !g.is_identity())
                    .map(|g| g.into_images())
                    .collect();
                (Some(all), Some(prime))
            }
            _ => (None, None),
        };
        Ok(Checker {
            k: p.degree(),
            group: p.clone(),
            all,
            prime,
        })
    }

    /// Non-identity elements, if tabulated.
    pub(crate) fn elements(&self) -> Result<&[Vec<u32>]> {
        self.all.as_deref().ok_or_else(|| {
            Error::BudgetExhausted(format!(
                "group order exceeds the element table limit {ELEMENT_TABLE_LIMIT}"
            ))
        })
    }

    pub(crate) fn coloring_is_trivial(&self, colors: &[u32]) -> Result<bool> {
        match &self.prime {
            Some(els) => Ok(!els
                .iter()
                .any(|g| g.iter().zip(colors).all(|(&j, &c)| colors[j as usize] == c))),
            None => coloring_stabilizer_is_trivial(&self.group, colors),
        }
    }

    pub(crate) fn mask_is_trivial(&self, mask: u32) -> Result<bool> {
        match &self.prime {
            Some(els) => Ok(!els.iter().any(|g| apply_mask(g, mask) == mask)),
            None => {
                let colors: Vec<u32> = (0..self.k).map(|i| (mask >> i) & 1).collect();
                coloring_stabilizer_is_trivial(&self.group, &colors)
            }
        }
    }
}

pub(crate) fn apply_mask(g: &[u32], mask: u32) -> u32 {
    let mut out = 0u32;
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros();
        out |= 1 << g[i as usize];
        m &= m - 1;
    }
    out
}
