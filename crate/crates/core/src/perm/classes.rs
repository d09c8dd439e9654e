use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::group::PermutationGroup;
use super::permutation::Permutation;
use crate::error::{Error, Result};

/// All elements of `group`, sorted lexicographically by image array.
pub fn enumerate_elements(group: &PermutationGroup, bound: u64) -> Result<Vec<Permutation>> {
    let order = group.try_chain()?.order();
    if order > BigUint::from(bound) {
        return Err(Error::OrderExceedsBound {
            order: order.to_string(),
            bound,
        });
    }
    let chain = group.chain();
    let mut elems = vec![group.identity()];
    for level in chain.levels().iter().rev() {
        let reps: Vec<Permutation> = level
            .orbit()
            .iter()
            .map(|&p| level.transversal(p).expect("orbit point"))
            .collect();
        let mut next = Vec::with_capacity(elems.len() * reps.len());
        for x in &elems {
            for t in &reps {
                next.push(x.then(t));
            }
        }
        elems = next;
    }
    elems.sort_unstable();
    Ok(elems)
}

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    /// Lexicographically least member.
    pub rep: Permutation,
    pub size: u64,
    pub element_order: u64,
}

#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    /// Ordered by representative.
    pub classes: Vec<ConjugacyClass>,
    pub group_order: u64,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Classes of elements of prime order.
    pub fn prime_order(&self) -> impl Iterator<Item = &ConjugacyClass> {
        self.classes.iter().filter(|c| is_prime(c.element_order))
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Conjugacy classes by closure of each element under generator conjugation.
pub fn conjugacy_classes(group: &PermutationGroup, bound: u64) -> Result<ConjugacyClasses> {
    let elems = enumerate_elements(group, bound)?;
    let index: HashMap<&Permutation, usize> = elems.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut seen = vec![false; elems.len()];
    let mut classes = Vec::new();
    for (i, x) in elems.iter().enumerate() {
        if seen[i] {
            continue;
        }
        seen[i] = true;
        let mut stack = vec![x.clone()];
        let mut size = 1u64;
        while let Some(y) = stack.pop() {
            for g in group.generators() {
                let z = y.conjugate_by(g);
                let j = *index.get(&z).ok_or_else(|| {
                    Error::Internal("conjugate outside the enumerated group".into())
                })?;
                if !seen[j] {
                    seen[j] = true;
                    size += 1;
                    stack.push(z);
                }
            }
        }
        classes.push(ConjugacyClass {
            rep: x.clone(),
            size,
            element_order: x.order(),
        });
    }
    Ok(ConjugacyClasses {
        classes,
        group_order: elems.len() as u64,
    })
}

/// Least number of points moved by a non-identity element.
pub fn minimal_degree(group: &PermutationGroup, bound: u64) -> Result<Option<usize>> {
    let classes = conjugacy_classes(group, bound)?;
    Ok(classes
        .classes
        .iter()
        .filter(|c| !c.rep.is_identity())
        .map(|c| c.rep.moved_count())
        .min())
}

/// Subgroup of the elements satisfying `keep`, which must be closed.
pub fn filter_subgroup<F>(group: &PermutationGroup, bound: u64, keep: F) -> Result<PermutationGroup>
where
    F: Fn(&Permutation) -> bool + Sync + Send,
{
    let elems = enumerate_elements(group, bound)?;
    let kept: Vec<Permutation> = crate::par::map(&elems, |g| keep(g).then(|| g.clone()))
        .into_iter()
        .flatten()
        .collect();
    let count = kept.len() as u64;
    let h = PermutationGroup::generated_by(group.degree(), &kept)?;
    if h.order().to_u64() != Some(count) {
        return Err(Error::Internal("filtered elements do not form a subgroup".into()));
    }
    Ok(h)
}
