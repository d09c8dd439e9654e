use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationGroup};

/// Default cap on `|Γ|^k`.
pub const DEFAULT_POINT_BUDGET: u64 = 5_000_000;

/// The set `Γ^k`, with coordinate 0 least significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductActionSpace {
    gamma: usize,
    k: usize,
    total: usize,
}

impl ProductActionSpace {
    pub fn new(gamma: usize, k: usize, budget: u64) -> Result<Self> {
        if gamma == 0 || k == 0 {
            return Err(Error::InvalidParameters("empty product space".into()));
        }
        let total = (gamma as u64)
            .checked_pow(k as u32)
            .filter(|&t| t <= budget && t <= u32::MAX as u64)
            .ok_or_else(|| Error::PointBudgetExceeded {
                points: BigUint::from(gamma).pow(k as u32).to_string(),
                budget,
            })?;
        Ok(ProductActionSpace {
            gamma,
            k,
            total: total as usize,
        })
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn encode(&self, coords: &[u32]) -> u32 {
        debug_assert_eq!(coords.len(), self.k);
        coords
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.gamma as u64 + c as u64) as u32
    }

    pub fn decode_into(&self, mut point: u32, out: &mut [u32]) {
        for c in out.iter_mut() {
            *c = point % self.gamma as u32;
            point /= self.gamma as u32;
        }
    }

    pub fn decode(&self, point: u32) -> Vec<u32> {
        let mut out = vec![0; self.k];
        self.decode_into(point, &mut out);
        out
    }

    /// `(z_0, ..., z_{k-1}) σ` sending `γ` to `δ` with `δ_{i^σ} = γ_i^{z_i}`.
    pub fn element(&self, z: &[&Permutation], sigma: &Permutation) -> Permutation {
        assert_eq!(z.len(), self.k);
        assert_eq!(sigma.degree(), self.k);
        let mut coords = vec![0u32; self.k];
        let mut out = vec![0u32; self.k];
        let images = (0..self.total as u32)
            .map(|p| {
                self.decode_into(p, &mut coords);
                for i in 0..self.k {
                    out[sigma.image(i as u32) as usize] = z[i].image(coords[i]);
                }
                self.encode(&out)
            })
            .collect();
        Permutation::from_images(images).expect("product action is a bijection")
    }

    /// Base-group element acting as `x` in coordinate `i`.
    pub fn in_coordinate(&self, x: &Permutation, i: usize) -> Permutation {
        let id = Permutation::identity(self.gamma);
        let z: Vec<&Permutation> = (0..self.k).map(|j| if j == i { x } else { &id }).collect();
        self.element(&z, &Permutation::identity(self.k))
    }

    /// Element permuting coordinates only.
    pub fn lift(&self, sigma: &Permutation) -> Permutation {
        let id = Permutation::identity(self.gamma);
        let z: Vec<&Permutation> = vec![&id; self.k];
        self.element(&z, sigma)
    }
}

/// An element `(z_1, ..., z_k) σ` of `L ≀ P`.
#[derive(Clone, Debug)]
pub struct WreathElement {
    pub z: Vec<Permutation>,
    pub sigma: Permutation,
}

/// `G` with `T^k ⊴ G ≤ L ≀ P` acting on `Γ^k`.
#[derive(Clone, Debug)]
pub struct ProductTypeGroup {
    pub space: ProductActionSpace,
    pub group: PermutationGroup,
    pub l: PermutationGroup,
    pub t: PermutationGroup,
    pub p: PermutationGroup,
    /// Image of `G ∩ L^k` in `(L/T)^k`, as coset-symbol tuples.
    pub quotient_image: Vec<Vec<u8>>,
    /// One element of each coset of `T` in `L`; symbol 0 is `T`.
    pub coset_reps: Vec<Permutation>,
    /// `None` when `G ∩ L^k = T^k`.
    pub tau: Option<usize>,
}

impl ProductTypeGroup {
    pub fn k(&self) -> usize {
        self.space.k()
    }

    pub fn index_l_t(&self) -> usize {
        self.coset_reps.len()
    }
}

/// Least coordinate of each orbit of `p`.
fn orbit_leaders(p: &PermutationGroup) -> Vec<usize> {
    p.orbit_partition().reps().into_iter().map(|r| r as usize).collect()
}

fn check_p(p: &PermutationGroup, k: usize) -> Result<()> {
    if p.degree() != k {
        return Err(Error::DegreeMismatch(k, p.degree()));
    }
    Ok(())
}

/// `L ≀ P` in product action.
pub fn wreath_product(
    l: &PermutationGroup,
    p: &PermutationGroup,
    budget: u64,
) -> Result<(ProductActionSpace, PermutationGroup)> {
    let k = p.degree();
    let space = ProductActionSpace::new(l.degree(), k, budget)?;
    let mut gens = Vec::new();
    for i in orbit_leaders(p) {
        for x in l.generators() {
            gens.push(space.in_coordinate(x, i));
        }
    }
    for s in p.generators() {
        gens.push(space.lift(s));
    }
    let order = l.order().pow(k as u32) * p.order();
    let group = PermutationGroup::new(space.total(), gens)?.with_known_order(order);
    group.try_chain()?;
    Ok((space, group))
}

/// Coset representatives of `T` in `L` and their multiplication table.
pub(crate) struct Quotient {
    pub reps: Vec<Permutation>,
    pub table: Vec<Vec<u8>>,
}

fn symbol_in(reps: &[Permutation], t: &PermutationGroup, x: &Permutation) -> Option<u8> {
    reps.iter()
        .position(|r| t.contains(&x.then(&r.inverse())))
        .map(|i| i as u8)
}

impl Quotient {
    pub fn new(l: &PermutationGroup, t: &PermutationGroup) -> Result<Quotient> {
        let index = (l.order() / t.order())
            .to_usize()
            .filter(|&i| i <= 255)
            .ok_or_else(|| Error::InvalidParameters("|L:T| too large".into()))?;
        let mut reps = vec![l.identity()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in l.generators() {
                let x = reps[i].then(g);
                if symbol_in(&reps, t, &x).is_none() {
                    reps.push(x);
                    queue.push_back(reps.len() - 1);
                }
            }
        }
        if reps.len() != index {
            return Err(Error::Internal("coset enumeration of L/T failed".into()));
        }
        let table = (0..index)
            .map(|i| {
                (0..index)
                    .map(|j| {
                        symbol_in(&reps, t, &reps[i].then(&reps[j])).expect("closed under products")
                    })
                    .collect()
            })
            .collect();
        Ok(Quotient { reps, table })
    }

    /// Index of the coset of `T` containing `x`.
    pub fn symbol(&self, t: &PermutationGroup, x: &Permutation) -> Option<u8> {
        symbol_in(&self.reps, t, x)
    }
}

/// `⟨T^k, P, extra⟩` with its image in `(L/T)^k` and `τ`.
pub fn product_type_subgroup(
    l: &PermutationGroup,
    t: &PermutationGroup,
    p: &PermutationGroup,
    extra: &[WreathElement],
    budget: u64,
) -> Result<ProductTypeGroup> {
    let k = p.degree();
    if l.degree() != t.degree() {
        return Err(Error::DegreeMismatch(l.degree(), t.degree()));
    }
    check_p(p, k)?;
    if !t.is_subgroup_of(l) || !t.is_normalized_by(l) {
        return Err(Error::NotNormal);
    }
    if !t.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let space = ProductActionSpace::new(l.degree(), k, budget)?;
    let quotient = Quotient::new(l, t)?;
    let mut tuples = Vec::new();
    for e in extra {
        if e.z.len() != k || e.sigma.degree() != k || !p.contains(&e.sigma) {
            return Err(Error::InvalidParameters("malformed wreath element".into()));
        }
        let sym = e
            .z
            .iter()
            .map(|z| quotient.symbol(t, z).ok_or(Error::NotASubgroup))
            .collect::<Result<Vec<u8>>>()?;
        tuples.push(sym);
    }
    let image = quotient_closure(&quotient.table, p, &tuples, k);
    let tau = image
        .iter()
        .filter(|v| v.iter().any(|&s| s != 0))
        .map(|v| v.iter().filter(|&&s| s == 0).count())
        .max();

    let mut gens = Vec::new();
    for i in 0..k {
        for x in t.generators() {
            gens.push(space.in_coordinate(x, i));
        }
    }
    for s in p.generators() {
        gens.push(space.lift(s));
    }
    for e in extra {
        let z: Vec<&Permutation> = e.z.iter().collect();
        gens.push(space.element(&z, &e.sigma));
    }
    let order = t.order().pow(k as u32) * BigUint::from(image.len()) * p.order();
    let group = PermutationGroup::new(space.total(), gens)?.with_known_order(order);
    group.try_chain()?;
    Ok(ProductTypeGroup {
        space,
        group,
        l: l.clone(),
        t: t.clone(),
        p: p.clone(),
        quotient_image: image,
        coset_reps: quotient.reps,
        tau,
    })
}

/// Subgroup of `(L/T)^k` generated by the `P`-translates of `tuples`.
fn quotient_closure(
    table: &[Vec<u8>],
    p: &PermutationGroup,
    tuples: &[Vec<u8>],
    k: usize,
) -> Vec<Vec<u8>> {
    let permuted = |v: &[u8], s: &Permutation| {
        let mut out = vec![0u8; k];
        for i in 0..k {
            out[s.image(i as u32) as usize] = v[i];
        }
        out
    };
    let mut gens: BTreeSet<Vec<u8>> = BTreeSet::new();
    let mut queue: Vec<Vec<u8>> = tuples.to_vec();
    while let Some(v) = queue.pop() {
        if gens.insert(v.clone()) {
            for s in p.generators() {
                queue.push(permuted(&v, s));
            }
        }
    }
    let mut elems: BTreeSet<Vec<u8>> = BTreeSet::from([vec![0u8; k]]);
    let mut frontier: Vec<Vec<u8>> = vec![vec![0u8; k]];
    while let Some(v) = frontier.pop() {
        for g in &gens {
            let w: Vec<u8> = v
                .iter()
                .zip(g)
                .map(|(&a, &b)| table[a as usize][b as usize])
                .collect();
            if elems.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    elems.into_iter().collect()
}

/// `|L|^k |P|` as a big integer.
pub fn wreath_order(l: &PermutationGroup, p: &PermutationGroup) -> BigUint {
    l.order().pow(p.degree() as u32) * p.order()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::standard::{cyclic, symmetric};

    #[test]
    fn encode_decode_round_trip() {
        let s = ProductActionSpace::new(7, 3, 1000).unwrap();
        for p in [0u32, 1, 48, 342] {
            assert_eq!(s.encode(&s.decode(p)), p);
        }
        assert_eq!(s.decode(1), vec![1, 0, 0]);
        assert!(ProductActionSpace::new(100, 4, 1000).is_err());
    }

    #[test]
    fn s3_wreath_s2() {
        let l = symmetric(3).unwrap().group;
        let p = symmetric(2).unwrap().group;
        let (space, g) = wreath_product(&l, &p, 100).unwrap();
        assert_eq!(space.total(), 9);
        let free = PermutationGroup::new(9, g.generators().to_vec()).unwrap();
        assert_eq!(free.order(), BigUint::from(72u32));
    }

    #[test]
    fn tau_of_full_and_diagonal() {
        let l = symmetric(5).unwrap();
        let t = l.socle.clone().unwrap();
        let a = l.outer[0].clone();
        let p = cyclic(3).unwrap().group;
        let id = l.group.identity();
        let full = product_type_subgroup(
            &l.group,
            &t,
            &p,
            &[WreathElement {
                z: vec![a.clone(), id.clone(), id.clone()],
                sigma: Permutation::identity(3),
            }],
            1000,
        )
        .unwrap();
        assert_eq!(full.tau, Some(2));
        assert_eq!(full.group.order(), wreath_order(&l.group, &p));
        let diag = product_type_subgroup(
            &l.group,
            &t,
            &p,
            &[WreathElement {
                z: vec![a.clone(), a.clone(), a.clone()],
                sigma: Permutation::identity(3),
            }],
            1000,
        )
        .unwrap();
        assert_eq!(diag.tau, Some(0));
        assert_eq!(diag.quotient_image.len(), 2);
    }
}
