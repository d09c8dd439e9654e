use num_traits::ToPrimitive;

use crate::constructions::ProductActionSpace;
use crate::distinguishing::{is_distinguishing, SetPartition};
use crate::error::{Error, Result};
use crate::perm::{PermutationGroup, UnionFind};

/// Largest `|Γ|^2` for which pair orbits are tabulated.
pub const MAX_PAIR_TABLE: usize = 25_000_000;

/// Orbits of `L` on ordered pairs, labelled by their least pair `a·n + b`.
#[derive(Clone, Debug)]
pub struct PairOrbitTable {
    gamma: usize,
    labels: Vec<u32>,
    sizes: Vec<u32>,
    group_order: u64,
}

impl PairOrbitTable {
    pub fn new(l: &PermutationGroup) -> Result<Self> {
        let n = l.degree();
        let total = n * n;
        if total > MAX_PAIR_TABLE {
            return Err(Error::BudgetExhausted(format!("{total} ordered pairs")));
        }
        let mut uf = UnionFind::new(total);
        for g in l.generators() {
            for a in 0..n as u32 {
                let ga = g.image(a) as usize * n;
                for b in 0..n as u32 {
                    uf.union(a * n as u32 + b, (ga + g.image(b) as usize) as u32);
                }
            }
        }
        let (labels, sizes) = uf.classes();
        let group_order = l
            .order()
            .to_u64()
            .ok_or_else(|| Error::Internal("group order overflows".into()))?;
        Ok(PairOrbitTable {
            gamma: n,
            labels,
            sizes,
            group_order,
        })
    }

    pub fn label(&self, a: u32, b: u32) -> u32 {
        self.labels[a as usize * self.gamma + b as usize]
    }

    /// Whether `{a, b}` is a base, i.e. the pair lies in a regular orbit.
    pub fn is_base_pair(&self, a: u32, b: u32) -> bool {
        self.sizes[self.label(a, b) as usize] as u64 == self.group_order
    }

    pub fn regular_orbit_count(&self) -> usize {
        self.sizes
            .iter()
            .filter(|&&s| s as u64 == self.group_order)
            .count()
    }
}

/// Decides whether `{α, β}` is a base for `L ≀ P` coordinate by coordinate.
pub fn product_base_pair_test(
    space: &ProductActionSpace,
    table: &PairOrbitTable,
    p: &PermutationGroup,
    alpha: u32,
    beta: u32,
) -> Result<bool> {
    let a = space.decode(alpha);
    let b = space.decode(beta);
    if a.iter().zip(&b).any(|(&x, &y)| !table.is_base_pair(x, y)) {
        return Ok(false);
    }
    let colors: Vec<u32> = a.iter().zip(&b).map(|(&x, &y)| table.label(x, y)).collect();
    is_distinguishing(p, &SetPartition::from_colors(&colors))
}

/// `J ≀ P`, the stabilizer of `(0, ..., 0)` in `L ≀ P`.
pub fn wreath_point_stabilizer(
    space: &ProductActionSpace,
    l: &PermutationGroup,
    p: &PermutationGroup,
) -> Result<PermutationGroup> {
    let j = l.point_stabilizer(0)?;
    let mut gens = Vec::new();
    for i in 0..space.k() {
        for x in j.generators() {
            gens.push(space.in_coordinate(x, i));
        }
    }
    for s in p.generators() {
        gens.push(space.lift(s));
    }
    let order = j.order().pow(space.k() as u32) * p.order();
    Ok(PermutationGroup::new(space.total(), gens)?.with_known_order(order))
}

/// `r(L ≀ P)` by counting regular orbits of `J ≀ P` on `Γ^k`.
pub fn r_wreath_brute(space: &ProductActionSpace, l: &PermutationGroup, p: &PermutationGroup) -> Result<u64> {
    let h = wreath_point_stabilizer(space, l, p)?;
    Ok(crate::base::regular_orbits(&h).count as u64)
}
