use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::par;
use crate::perm::PermutationGroup;

pub const DEFAULT_NODE_BUDGET: u64 = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseMethod {
    Exact,
    GreedyUpperBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseResult {
    pub b: usize,
    pub witness: Vec<u32>,
    pub method: BaseMethod,
}

/// Smallest `b` with `n^b >= order`.
pub fn information_bound(order: &BigUint, degree: usize) -> usize {
    if order.is_one() {
        return 0;
    }
    let n = BigUint::from(degree.max(2));
    let mut b = 0;
    let mut pow = BigUint::one();
    while &pow < order {
        pow *= &n;
        b += 1;
    }
    b
}

struct Search<'a> {
    budget: u64,
    nodes: &'a AtomicU64,
    exhausted: &'a AtomicBool,
}

impl Search<'_> {
    fn tick(&self) -> bool {
        let used = self.nodes.fetch_add(1, Ordering::Relaxed);
        if used >= self.budget {
            self.exhausted.store(true, Ordering::Relaxed);
            false
        } else {
            true
        }
    }

    /// Extends `prefix` (with pointwise stabilizer `k`) by `remaining`
    /// points to a base, if possible.
    fn extend(
        &self,
        k: &PermutationGroup,
        prefix: &mut Vec<u32>,
        remaining: usize,
    ) -> Result<Option<Vec<u32>>> {
        if k.is_trivial() {
            return Ok(Some(prefix.clone()));
        }
        if remaining == 0 || !self.tick() {
            return Ok(None);
        }
        let part = k.orbit_partition();
        let order = k.order();
        if remaining == 1 {
            let size = order.to_usize();
            return Ok(size.and_then(|s| part.reps_with_size(s).first().copied()).map(|r| {
                let mut w = prefix.clone();
                w.push(r);
                w
            }));
        }
        let max = BigUint::from(part.max_size());
        if max.pow(remaining as u32) < order {
            return Ok(None);
        }
        for beta in part.reps() {
            if part.size_of(beta) == 1 {
                continue;
            }
            let kb = k.point_stabilizer(beta)?;
            prefix.push(beta);
            let found = self.extend(&kb, prefix, remaining - 1)?;
            prefix.pop();
            if found.is_some() {
                return Ok(found);
            }
            if self.exhausted.load(Ordering::Relaxed) {
                return Ok(None);
            }
        }
        Ok(None)
    }
}

/// Base of length `b` starting at point 0, searched in parallel over the
/// second point.
fn search_depth(
    h: &PermutationGroup,
    b: usize,
    s: &Search<'_>,
) -> Result<Option<Vec<u32>>> {
    if b == 1 || h.is_trivial() {
        return s.extend(h, &mut vec![0], b.saturating_sub(1));
    }
    if !s.tick() {
        return Ok(None);
    }
    let part = h.orbit_partition();
    let max = BigUint::from(part.max_size());
    if max.pow(b as u32 - 1) < h.order() {
        return Ok(None);
    }
    let reps: Vec<u32> = part
        .reps()
        .into_iter()
        .filter(|&r| part.size_of(r) > 1)
        .collect();
    let found = par::find_first(&reps, |&beta| {
        let run = || -> Result<Option<Vec<u32>>> {
            let kb = h.point_stabilizer(beta)?;
            s.extend(&kb, &mut vec![0, beta], b - 2)
        };
        match run() {
            Ok(Some(w)) => Some(Ok(w)),
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        }
    });
    found.transpose()
}

/// Base built by repeatedly fixing a point in a largest orbit.
pub fn greedy_base(g: &PermutationGroup) -> Result<Vec<u32>> {
    let mut k = g.clone();
    let mut base = Vec::new();
    while !k.is_trivial() {
        let part = k.orbit_partition();
        let max = part.max_size();
        let beta = part
            .reps()
            .into_iter()
            .find(|&r| part.size_of(r) == max)
            .expect("non-trivial group has a non-trivial orbit");
        k = k.point_stabilizer(beta)?;
        base.push(beta);
    }
    Ok(base)
}

/// Minimal base size of a transitive group by iterative deepening.
pub fn base_size_exact(g: &PermutationGroup, node_budget: u64) -> Result<BaseResult> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    if g.is_trivial() {
        return Ok(BaseResult {
            b: 0,
            witness: vec![],
            method: BaseMethod::Exact,
        });
    }
    let order = g.order();
    let h = g.point_stabilizer(0)?;
    let nodes = AtomicU64::new(0);
    let exhausted = AtomicBool::new(false);
    let s = Search {
        budget: node_budget,
        nodes: &nodes,
        exhausted: &exhausted,
    };
    let start = information_bound(&order, g.degree()).max(1);
    for b in start..=g.degree() {
        if let Some(w) = search_depth(&h, b, &s)? {
            verify_base(g, &w)?;
            return Ok(BaseResult {
                b: w.len(),
                witness: w,
                method: BaseMethod::Exact,
            });
        }
        if exhausted.load(Ordering::Relaxed) {
            let w = greedy_base(g)?;
            verify_base(g, &w)?;
            return Ok(BaseResult {
                b: w.len(),
                witness: w,
                method: BaseMethod::GreedyUpperBound,
            });
        }
    }
    Err(Error::Internal("no base found".into()))
}

/// Checks that `points` has trivial pointwise stabilizer.
pub fn is_base(g: &PermutationGroup, points: &[u32]) -> Result<bool> {
    Ok(g.pointwise_stabilizer(points)?.is_trivial())
}

fn verify_base(g: &PermutationGroup, points: &[u32]) -> Result<()> {
    if is_base(g, points)? {
        Ok(())
    } else {
        Err(Error::Internal(format!("{points:?} is not a base")))
    }
}
