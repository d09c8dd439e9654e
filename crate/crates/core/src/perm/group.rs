use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::chain::{build_chain, ChainOptions, StabChain};
use super::orbits::{OrbitPartition, SchreierTree};
use super::permutation::Permutation;
use crate::error::{Error, Result};

/// Default cap on explicit element enumeration.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 10_000_000;

/// A permutation group given by generators, with a lazily built chain.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    known_order: Option<BigUint>,
    chain: OnceLock<Arc<StabChain>>,
}

/// Orbit of a point together with witnesses for each member.
#[derive(Clone, Debug)]
pub struct Orbit {
    tree: SchreierTree,
}

impl Orbit {
    /// Sorted orbit points.
    pub fn points(&self) -> Vec<u32> {
        self.tree.sorted_orbit()
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    pub fn contains(&self, p: u32) -> bool {
        self.tree.contains(p)
    }

    /// Element mapping the seed to `p`.
    pub fn witness(&self, p: u32) -> Option<Permutation> {
        self.tree.transversal(p)
    }
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidParameters("degree must be positive".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let mut gens: Vec<Permutation> = Vec::new();
        for g in generators {
            if !g.is_identity() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ok(PermutationGroup {
            degree,
            generators: gens,
            known_order: None,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup {
            degree,
            generators: Vec::new(),
            known_order: Some(BigUint::one()),
            chain: OnceLock::from(Arc::new(StabChain::trivial(degree))),
        }
    }

    /// Declares the group order, which lets the chain builder stop early.
    pub fn with_known_order(mut self, order: BigUint) -> Self {
        self.known_order = Some(order);
        self.chain = OnceLock::new();
        self
    }

    pub fn from_chain(chain: StabChain) -> Self {
        let order = chain.order();
        let degree = chain.degree();
        PermutationGroup {
            degree,
            generators: chain.strong_generators(),
            known_order: Some(order),
            chain: OnceLock::from(Arc::new(chain)),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn known_order(&self) -> Option<&BigUint> {
        self.known_order.as_ref()
    }

    pub fn try_chain(&self) -> Result<&Arc<StabChain>> {
        if let Some(c) = self.chain.get() {
            return Ok(c);
        }
        let opts = ChainOptions {
            prefix: Vec::new(),
            known_order: self.known_order.clone(),
            seed: None,
        };
        let c = build_chain(self.degree, &self.generators, &opts, None)?;
        Ok(self.chain.get_or_init(|| Arc::new(c)))
    }

    /// Stabilizer chain; panics only if a declared order is inconsistent.
    pub fn chain(&self) -> &Arc<StabChain> {
        match self.try_chain() {
            Ok(c) => c,
            Err(e) => panic!("stabilizer chain construction failed: {e}"),
        }
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty() || self.chain().is_trivial()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.chain().contains(g)
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn check_point(&self, p: usize) -> Result<()> {
        if p >= self.degree {
            Err(Error::PointOutOfRange {
                point: p,
                degree: self.degree,
            })
        } else {
            Ok(())
        }
    }

    pub fn orbit(&self, seed: u32) -> Result<Orbit> {
        self.check_point(seed as usize)?;
        let gens = self.generators.iter().cloned().map(Arc::new).collect();
        Ok(Orbit {
            tree: SchreierTree::new(seed, self.degree, gens),
        })
    }

    pub fn orbit_partition(&self) -> OrbitPartition {
        OrbitPartition::new(self.degree, self.generators.iter())
    }

    /// All orbits, sorted, ordered by least element.
    pub fn all_orbits(&self) -> Vec<Vec<u32>> {
        self.orbit_partition().orbits()
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 1 || self.orbit_partition().num_orbits() == 1
    }

    /// Chain whose base starts with `points`.
    pub fn chain_with_prefix(&self, points: &[u32]) -> Result<StabChain> {
        for &p in points {
            self.check_point(p as usize)?;
        }
        let chain = self.try_chain()?;
        let base = chain.base();
        if base.len() >= points.len() && base[..points.len()] == *points {
            return Ok((**chain).clone());
        }
        let opts = ChainOptions {
            prefix: points.to_vec(),
            known_order: Some(chain.order()),
            seed: None,
        };
        build_chain(self.degree, &chain.strong_generators(), &opts, Some(chain))
    }

    pub fn pointwise_stabilizer(&self, points: &[u32]) -> Result<PermutationGroup> {
        let c = self.chain_with_prefix(points)?;
        Ok(PermutationGroup::from_chain(c.tail(points.len())))
    }

    pub fn point_stabilizer(&self, point: u32) -> Result<PermutationGroup> {
        self.pointwise_stabilizer(&[point])
    }

    /// Group generated by `self` and extra elements of the same degree.
    pub fn join(&self, extra: &[Permutation]) -> Result<PermutationGroup> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        PermutationGroup::new(self.degree, gens)
    }

    pub fn is_subgroup_of(&self, other: &PermutationGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Whether `self` is normalized by every generator of `by`.
    pub fn is_normalized_by(&self, by: &PermutationGroup) -> bool {
        by.generators.iter().all(|x| {
            self.generators
                .iter()
                .all(|t| self.contains(&t.conjugate_by(x)))
        })
    }

    /// Smallest normal subgroup of `self` containing `elements`.
    pub fn normal_closure(&self, elements: &[Permutation]) -> Result<PermutationGroup> {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut current = PermutationGroup::new(self.degree, Vec::new())?;
        let mut queue: Vec<Permutation> = elements.to_vec();
        while let Some(x) = queue.pop() {
            if current.contains(&x) {
                continue;
            }
            gens.push(x.clone());
            current = PermutationGroup::new(self.degree, gens.clone())?;
            for g in &self.generators {
                queue.push(x.conjugate_by(g));
            }
        }
        Ok(current)
    }

    pub fn derived_subgroup(&self) -> Result<PermutationGroup> {
        let mut comms = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let c = a.inverse().then(&b.inverse()).then(a).then(b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// Subgroup generated greedily by `elements`, keeping only generators
    /// that enlarge the group.
    pub fn generated_by(degree: usize, elements: &[Permutation]) -> Result<PermutationGroup> {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut current = PermutationGroup::new(degree, Vec::new())?;
        for x in elements {
            if !current.contains(x) {
                gens.push(x.clone());
                current = PermutationGroup::new(degree, gens.clone())?;
            }
        }
        Ok(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> PermutationGroup {
        let cyc: Vec<u32> = (0..n as u32).collect();
        PermutationGroup::new(
            n,
            vec![
                Permutation::from_cycles(n, &[&[0, 1]]).unwrap(),
                Permutation::from_cycles(n, &[&cyc]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn orbit_of_three_cycle() {
        let g = PermutationGroup::new(
            5,
            vec![Permutation::from_cycles(5, &[&[0, 1, 2]]).unwrap()],
        )
        .unwrap();
        let o = g.orbit(0).unwrap();
        assert_eq!(o.points(), vec![0, 1, 2]);
        for p in o.points() {
            assert_eq!(o.witness(p).unwrap().image(0), p);
        }
        assert!(g.orbit(9).is_err());
    }

    #[test]
    fn trivial_group_orbit() {
        let g = PermutationGroup::trivial(6);
        assert_eq!(g.orbit(5).unwrap().points(), vec![5]);
        assert_eq!(g.all_orbits().len(), 6);
    }

    #[test]
    fn stabilizers_in_symmetric_five() {
        let g = sym(5);
        assert_eq!(g.point_stabilizer(0).unwrap().order(), BigUint::from(24u32));
        assert_eq!(
            g.point_stabilizer(3).unwrap().order(),
            BigUint::from(24u32)
        );
        assert!(g.pointwise_stabilizer(&[0, 1, 2, 3]).unwrap().is_trivial());
        let k = g.pointwise_stabilizer(&[4, 2]).unwrap();
        assert_eq!(k.order(), BigUint::from(6u32));
        for x in k.generators() {
            assert_eq!(x.image(4), 4);
            assert_eq!(x.image(2), 2);
        }
    }

    #[test]
    fn derived_subgroup_of_symmetric_is_alternating() {
        let a = sym(5).derived_subgroup().unwrap();
        assert_eq!(a.order(), BigUint::from(60u32));
        assert!(a.is_normalized_by(&sym(5)));
    }
}
