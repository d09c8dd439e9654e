use num_bigint::BigUint;
use serde::Serialize;

use super::{apply_mask, Checker, MAX_SUBSET_K};
use crate::error::{Error, Result};
use crate::par;
use crate::perm::PermutationGroup;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerSetOrbits {
    pub count: usize,
    /// Least subset (as a sorted point list) of each regular orbit.
    pub reps: Vec<Vec<u32>>,
    /// Whether each regular orbit contains the complement of its members.
    pub self_complementary: Vec<bool>,
}

impl PowerSetOrbits {
    fn empty() -> Self {
        PowerSetOrbits {
            count: 0,
            reps: Vec::new(),
            self_complementary: Vec::new(),
        }
    }
}

fn points(mask: u32, k: usize) -> Vec<u32> {
    (0..k as u32).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Regular orbits of `p` on all subsets of its domain.
pub fn power_set_regular_orbits(p: &PermutationGroup) -> Result<PowerSetOrbits> {
    let k = p.degree();
    if k > MAX_SUBSET_K {
        return Err(Error::BudgetExhausted(format!(
            "power set sweep needs k <= {MAX_SUBSET_K}, got {k}"
        )));
    }
    if p.order() > BigUint::from(1u64) << k {
        return Ok(PowerSetOrbits::empty());
    }
    let checker = Checker::new(p)?;
    let elems = checker.elements()?;
    let total = 1usize << k;
    let words = total.div_ceil(64);
    let flags = par::map_range(words, |w| {
        let mut bits = 0u64;
        for j in 0..64 {
            let mask = w * 64 + j;
            if mask >= total {
                break;
            }
            if checker.mask_is_trivial(mask as u32)? {
                bits |= 1 << j;
            }
        }
        Ok(bits)
    })
    .into_iter()
    .collect::<Result<Vec<u64>>>()?;
    let full = (total - 1) as u32;
    let mut seen = vec![0u64; words];
    let mut out = PowerSetOrbits::empty();
    for mask in 0..total {
        let (w, j) = (mask / 64, mask % 64);
        if flags[w] >> j & 1 == 0 || seen[w] >> j & 1 == 1 {
            continue;
        }
        seen[w] |= 1 << j;
        let mut complementary = mask as u32 == full ^ mask as u32;
        for g in elems {
            let y = apply_mask(g, mask as u32) as usize;
            seen[y / 64] |= 1 << (y % 64);
            complementary |= y as u32 == full ^ mask as u32;
        }
        out.reps.push(points(mask as u32, k));
        out.self_complementary.push(complementary);
    }
    out.count = out.reps.len();
    Ok(out)
}

/// Regular orbits on subsets whose size differs from `k/2`.
pub fn x_regular_orbits(p: &PermutationGroup) -> Result<PowerSetOrbits> {
    let k = p.degree();
    let all = power_set_regular_orbits(p)?;
    let mut out = PowerSetOrbits::empty();
    for (rep, c) in all.reps.into_iter().zip(all.self_complementary) {
        if 2 * rep.len() != k {
            out.reps.push(rep);
            out.self_complementary.push(c);
        }
    }
    out.count = out.reps.len();
    Ok(out)
}

/// Every subset with trivial setwise stabilizer is mapped onto its
/// complement by some element.
pub fn check_ddagger(p: &PermutationGroup) -> Result<bool> {
    Ok(power_set_regular_orbits(p)?
        .self_complementary
        .iter()
        .all(|&c| c))
}
