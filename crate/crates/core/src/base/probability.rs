use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::regular::reg_l_m;
use crate::error::{Error, Result};
use crate::perm::{conjugacy_classes, PermutationGroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbabilityEstimate {
    /// Probability that a uniform `b`-tuple is a base.
    #[serde(serialize_with = "ser_ratio")]
    pub p_exact: BigRational,
    /// Fixed-point-ratio bound on `1 - p_exact`; absent when the classes
    /// could not be enumerated.
    #[serde(serialize_with = "ser_opt_ratio")]
    pub q_hat: Option<BigRational>,
    pub b: usize,
}

impl ProbabilityEstimate {
    /// `1 - p_exact <= q_hat`, or `None` without `q_hat`.
    pub fn bound_holds(&self) -> Option<bool> {
        self.q_hat
            .as_ref()
            .map(|q| BigRational::one() - &self.p_exact <= *q)
    }
}

fn ser_ratio<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_opt_ratio<S: serde::Serializer>(
    r: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Sum over classes of prime-order elements of `|x^L| fpr(x)^b`.
pub fn fixed_point_ratio_bound(l: &PermutationGroup, b: usize, bound: u64) -> Result<BigRational> {
    let classes = conjugacy_classes(l, bound)?;
    let n = BigUint::from(l.degree());
    let mut total = BigRational::zero();
    for c in classes.prime_order() {
        let fpr = ratio(BigUint::from(c.rep.fixed_count()), n.clone());
        total += BigRational::from_integer(BigInt::from(c.size)) * num_traits::pow(fpr, b);
    }
    Ok(total)
}

/// `|J|^b reg(L, b) / |L|^(b-1)` together with the fixed-point-ratio bound.
pub fn base_probability(l: &PermutationGroup, b: usize, bound: u64) -> Result<ProbabilityEstimate> {
    if b == 0 {
        return Err(Error::InvalidParameters("b must be at least 1".into()));
    }
    let r = reg_l_m(l, b)?;
    let order = l.order();
    let j = l.point_stabilizer(0)?.order();
    let p_exact = ratio(
        j.pow(b as u32) * BigUint::from(r),
        order.pow(b as u32 - 1),
    );
    let q_hat = match fixed_point_ratio_bound(l, b, bound) {
        Ok(q) => Some(q),
        Err(e) if e.is_budget() => None,
        Err(e) => return Err(e),
    };
    Ok(ProbabilityEstimate { p_exact, q_hat, b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{action_of_degree, alternating, projective_family, Family};

    fn exhaustive(l: &PermutationGroup, b: usize) -> BigRational {
        let n = l.degree() as u64;
        let total = n.pow(b as u32);
        let mut hits = 0u64;
        for x in 0..total {
            let mut y = x;
            let pts: Vec<u32> = (0..b)
                .map(|_| {
                    let c = (y % n) as u32;
                    y /= n;
                    c
                })
                .collect();
            if l.pointwise_stabilizer(&pts).unwrap().is_trivial() {
                hits += 1;
            }
        }
        ratio(BigUint::from(hits), BigUint::from(total))
    }

    #[test]
    fn a5_on_six_points() {
        let a5 = alternating(5).unwrap();
        let l = action_of_degree(&a5, 6, &Default::default()).unwrap().group;
        let p = base_probability(&l, 3, 10_000).unwrap();
        assert_eq!(p.p_exact, ratio(5u32.into(), 9u32.into()));
        assert_eq!(p.p_exact, exhaustive(&l, 3));
        assert_eq!(p.bound_holds(), Some(true));
    }

    #[test]
    fn formula_matches_count() {
        let pgl = projective_family(Family::Pgl2, 7).unwrap().group;
        let p = base_probability(&pgl, 3, 10_000).unwrap();
        assert_eq!(p.p_exact, exhaustive(&pgl, 3));
        assert_eq!(p.p_exact, ratio((42u32 * 42 * 42).into(), (336u32 * 336).into()));
        let a5 = alternating(5).unwrap().group;
        for b in 1..=4 {
            let p = base_probability(&a5, b, 10_000).unwrap();
            assert_eq!(p.p_exact, exhaustive(&a5, b));
            assert_eq!(p.bound_holds(), Some(true));
        }
    }
}
