use super::group::PermutationGroup;
use super::orbits::UnionFind;
use crate::error::{Error, Result};

/// Finest block system in which `a` and `b` share a block, as a block label
/// (least member) for every point. The group must be transitive.
pub fn minimal_block(group: &PermutationGroup, a: u32, b: u32) -> Result<Vec<u32>> {
    let n = group.degree();
    for p in [a, b] {
        if p as usize >= n {
            return Err(Error::PointOutOfRange {
                point: p as usize,
                degree: n,
            });
        }
    }
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let mut uf = UnionFind::new(n);
    let mut queue = Vec::new();
    if uf.union(a, b) {
        queue.push((a, b));
    }
    while let Some((x, y)) = queue.pop() {
        for g in group.generators() {
            let (u, v) = (g.image(x), g.image(y));
            if uf.union(u, v) {
                queue.push((u, v));
            }
        }
    }
    let (labels, _) = uf.classes();
    Ok(labels)
}

pub fn is_primitive(group: &PermutationGroup) -> Result<bool> {
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let n = group.degree();
    if n <= 2 {
        return Ok(true);
    }
    let stab = group.point_stabilizer(0)?;
    let part = stab.orbit_partition();
    for beta in part.reps() {
        if beta == 0 {
            continue;
        }
        let labels = minimal_block(group, 0, beta)?;
        if labels.iter().any(|&l| l != 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the group is transitive on ordered `k`-tuples of distinct points.
pub fn is_k_transitive(group: &PermutationGroup, k: usize) -> Result<bool> {
    let n = group.degree();
    if k > n {
        return Ok(false);
    }
    if k == 0 {
        return Ok(true);
    }
    let prefix: Vec<u32> = (0..k as u32).collect();
    let chain = group.chain_with_prefix(&prefix)?;
    Ok(chain
        .levels()
        .iter()
        .take(k)
        .enumerate()
        .all(|(i, l)| l.len() == n - i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn group(n: usize, cycles: &[&[&[u32]]]) -> PermutationGroup {
        let gens = cycles
            .iter()
            .map(|c| Permutation::from_cycles(n, c).unwrap())
            .collect();
        PermutationGroup::new(n, gens).unwrap()
    }

    #[test]
    fn dihedral_square_is_imprimitive() {
        let d4 = group(4, &[&[&[0, 1, 2, 3]], &[&[1, 3]]]);
        assert!(!is_primitive(&d4).unwrap());
        let labels = minimal_block(&d4, 0, 2).unwrap();
        assert_eq!(labels, vec![0, 1, 0, 1]);
    }

    #[test]
    fn symmetric_is_primitive_and_transitive() {
        let s5 = group(5, &[&[&[0, 1]], &[&[0, 1, 2, 3, 4]]]);
        assert!(is_primitive(&s5).unwrap());
        assert!(is_k_transitive(&s5, 5).unwrap());
        let c5 = group(5, &[&[&[0, 1, 2, 3, 4]]]);
        assert!(is_primitive(&c5).unwrap());
        assert!(!is_k_transitive(&c5, 2).unwrap());
    }

    #[test]
    fn intransitive_rejected() {
        let g = group(4, &[&[&[0, 1]]]);
        assert_eq!(is_primitive(&g), Err(Error::NotTransitive));
    }
}
