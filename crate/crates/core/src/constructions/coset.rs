use std::collections::HashMap;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::perm::{enumerate_elements, Permutation, PermutationGroup};

/// Action of a group on the right cosets of a subgroup.
///
/// Cosets are numbered in increasing order of their least element, so the
/// subgroup itself is point 0.
#[derive(Clone, Debug)]
pub struct CosetAction {
    reps: Vec<Permutation>,
    coset_of: HashMap<Permutation, u32>,
    image: PermutationGroup,
}

impl CosetAction {
    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    /// Least element of each coset.
    pub fn representatives(&self) -> &[Permutation] {
        &self.reps
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.image
    }

    /// Coset containing `g`, if `g` lies in the acting group.
    pub fn coset_of(&self, g: &Permutation) -> Option<u32> {
        self.coset_of.get(g).copied()
    }

    /// Image of an element of the acting group.
    pub fn map(&self, g: &Permutation) -> Result<Permutation> {
        let images = self
            .reps
            .iter()
            .map(|r| self.coset_of(&r.then(g)).ok_or(Error::NotASubgroup))
            .collect::<Result<Vec<u32>>>()?;
        Permutation::from_images(images)
    }
}

pub fn coset_action(
    group: &PermutationGroup,
    subgroup: &PermutationGroup,
    bound: u64,
    max_index: u64,
) -> Result<CosetAction> {
    if subgroup.degree() != group.degree() || !subgroup.is_subgroup_of(group) {
        return Err(Error::NotASubgroup);
    }
    let order = group.order();
    let sub_order = subgroup.order();
    let index = &order / &sub_order;
    if index > max_index.into() {
        return Err(Error::IndexTooLarge {
            index: index.to_string(),
            bound: max_index,
        });
    }
    let elems = enumerate_elements(group, bound)?;
    let sub = enumerate_elements(subgroup, bound)?;
    let mut coset_of: HashMap<Permutation, u32> = HashMap::with_capacity(elems.len());
    let mut reps = Vec::new();
    for g in &elems {
        if coset_of.contains_key(g) {
            continue;
        }
        let c = reps.len() as u32;
        for h in &sub {
            coset_of.insert(h.then(g), c);
        }
        reps.push(g.clone());
    }
    let mut action = CosetAction {
        reps,
        coset_of,
        image: PermutationGroup::trivial(1),
    };
    let gens = group
        .generators()
        .iter()
        .map(|g| action.map(g))
        .collect::<Result<Vec<_>>>()?;
    let n = action.degree();
    let image = PermutationGroup::new(n, gens)?;
    if image.order() != order {
        return Err(Error::UnfaithfulAction);
    }
    action.image = image.with_known_order(order.clone());
    debug_assert_eq!(index.to_usize(), Some(n));
    Ok(action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn s4() -> PermutationGroup {
        PermutationGroup::new(
            4,
            vec![
                Permutation::from_cycles(4, &[&[0, 1]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn cosets_of_sylow3_normalizer() {
        let g = s4();
        let h = PermutationGroup::new(
            4,
            vec![
                Permutation::from_cycles(4, &[&[0, 1, 2]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 1]]).unwrap(),
            ],
        )
        .unwrap();
        let a = coset_action(&g, &h, 1000, 1000).unwrap();
        assert_eq!(a.degree(), 4);
        assert_eq!(a.group().order(), BigUint::from(24u32));
        assert!(a.representatives()[0].is_identity());
        let x = &g.generators()[0];
        let y = &g.generators()[1];
        assert_eq!(a.map(&x.then(y)).unwrap(), a.map(x).unwrap().then(&a.map(y).unwrap()));
    }

    #[test]
    fn unfaithful_and_non_subgroup() {
        let g = s4();
        let v4 = PermutationGroup::new(
            4,
            vec![
                Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(coset_action(&g, &v4, 1000, 1000).unwrap_err(), Error::UnfaithfulAction);
        let c5 = PermutationGroup::new(
            4,
            vec![Permutation::from_cycles(4, &[&[0, 1, 2]]).unwrap()],
        )
        .unwrap();
        assert!(coset_action(&c5, &v4, 1000, 1000).is_err());
        assert!(matches!(
            coset_action(&g, &PermutationGroup::trivial(4), 1000, 10),
            Err(Error::IndexTooLarge { .. })
        ));
    }
}
