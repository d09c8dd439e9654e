use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::par;
use crate::perm::{enumerate_elements, PermutationGroup, UnionFind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularOrbitCount {
    pub count: usize,
    pub stabilizer_order: u64,
    /// Least point of each regular orbit.
    pub orbit_reps: Vec<u32>,
}

/// Orbits of `k` on its domain whose length equals `|k|`.
pub fn regular_orbits(k: &PermutationGroup) -> RegularOrbitCount {
    let order = k.order();
    let part = k.orbit_partition();
    let reps = match order.to_usize() {
        Some(s) if s <= k.degree() => part.reps_with_size(s),
        _ => Vec::new(),
    };
    RegularOrbitCount {
        count: reps.len(),
        stabilizer_order: order.to_u64().unwrap_or(u64::MAX),
        orbit_reps: reps,
    }
}

/// `r(G)`: regular suborbits of a transitive group.
pub fn regular_suborbits(g: &PermutationGroup) -> Result<RegularOrbitCount> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    Ok(regular_orbits(&g.point_stabilizer(0)?))
}

/// Number of double cosets `H x H` of size `|H|^2` in `g`, with `H = g_0`.
///
/// Elements are merged under left and right multiplication by generators of
/// `H`, so each class is a double coset.
pub fn regular_double_cosets(g: &PermutationGroup, bound: u64) -> Result<usize> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let h = g.point_stabilizer(0)?;
    let elems = enumerate_elements(g, bound)?;
    let index: HashMap<&crate::perm::Permutation, u32> =
        elems.iter().enumerate().map(|(i, x)| (x, i as u32)).collect();
    let mut uf = UnionFind::new(elems.len());
    for (i, x) in elems.iter().enumerate() {
        for j in h.generators() {
            uf.union(i as u32, index[&j.then(x)]);
            uf.union(i as u32, index[&x.then(j)]);
        }
    }
    let (_, sizes) = uf.classes();
    let hs = h.order().to_u64().ok_or_else(|| Error::Internal("stabilizer too large".into()))?;
    let full = hs * hs;
    Ok(sizes.iter().filter(|&&s| s as u64 == full).count())
}

/// Regular orbits of `k` on ordered `j`-tuples of its domain.
fn regular_tuple_orbits(k: &PermutationGroup, j: usize) -> Result<u64> {
    let n = k.degree() as u64;
    if k.is_trivial() {
        return Ok(n.pow(j as u32));
    }
    if j == 1 {
        return Ok(regular_orbits(k).count as u64);
    }
    let part = k.orbit_partition();
    let mut total = 0u64;
    for beta in part.reps() {
        let kb = k.point_stabilizer(beta)?;
        total += regular_tuple_orbits(&kb, j - 1)?;
    }
    Ok(total)
}

/// `reg(L, m)`: regular orbits of a transitive `L` on `Γ^m`.
pub fn reg_l_m(l: &PermutationGroup, m: usize) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidParameters("m must be at least 1".into()));
    }
    if !l.is_transitive() {
        return Err(Error::NotTransitive);
    }
    if m == 1 {
        return Ok(u64::from(l.order() == BigUint::from(l.degree())));
    }
    let h = l.point_stabilizer(0)?;
    if h.is_trivial() || m == 2 {
        return regular_tuple_orbits(&h, m - 1);
    }
    let part = h.orbit_partition();
    let reps = part.reps();
    let counts = par::map(&reps, |&beta| {
        h.point_stabilizer(beta)
            .and_then(|kb| regular_tuple_orbits(&kb, m - 2))
    });
    counts.into_iter().try_fold(0u64, |acc, c| Ok(acc + c?))
}

/// `reg(L, m)` by brute force over all `m`-tuples, for testing.
pub fn reg_l_m_exhaustive(l: &PermutationGroup, m: usize) -> Result<u64> {
    let n = l.degree();
    let total = (n as u64).pow(m as u32);
    let mut seen = vec![false; total as usize];
    let order = l.order();
    let gens = l.generators();
    let mut count = 0u64;
    let decode = |mut x: u64| {
        (0..m)
            .map(|_| {
                let c = (x % n as u64) as u32;
                x /= n as u64;
                c
            })
            .collect::<Vec<u32>>()
    };
    let encode = |v: &[u32]| v.iter().rev().fold(0u64, |acc, &c| acc * n as u64 + c as u64);
    for start in 0..total {
        if seen[start as usize] {
            continue;
        }
        seen[start as usize] = true;
        let mut stack = vec![start];
        let mut size = 0u64;
        while let Some(x) = stack.pop() {
            size += 1;
            let v = decode(x);
            for g in gens {
                let w: Vec<u32> = v.iter().map(|&c| g.image(c)).collect();
                let y = encode(&w);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        if BigUint::from(size) == order {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{alternating, projective_family, symmetric, Family};

    #[test]
    fn pgl2_7_pairs_has_one_regular_suborbit() {
        let f = crate::constructions::pairs_action(&projective_family(Family::Pgl2, 7).unwrap())
            .unwrap();
        let r = regular_suborbits(&f.group).unwrap();
        assert_eq!(r.count, 1);
        assert_eq!(r.stabilizer_order, 12);
        assert_eq!(regular_double_cosets(&f.group, 10_000).unwrap(), 1);
        let t = f.socle.unwrap();
        assert_eq!(regular_suborbits(&t).unwrap().count, 3);
        assert_eq!(regular_double_cosets(&t, 10_000).unwrap(), 3);
    }

    #[test]
    fn reg_matches_exhaustive() {
        let groups = [
            alternating(5).unwrap().group,
            symmetric(4).unwrap().group,
            projective_family(Family::Psl2, 7).unwrap().group,
        ];
        for g in &groups {
            for m in 1..=4 {
                assert_eq!(reg_l_m(g, m).unwrap(), reg_l_m_exhaustive(g, m).unwrap());
            }
        }
        assert_eq!(reg_l_m(&symmetric(5).unwrap().group, 4).unwrap(), 1);
    }
}
