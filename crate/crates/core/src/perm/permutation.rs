use std::fmt;
use std::ops::Mul;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A bijection of `{0..degree-1}` stored as its image array.
///
/// Composition is left to right: `p.then(q)` maps `i` to `q[p[i]]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::MalformedGenerator(format!(
                    "{:?} is not a bijection",
                    truncated(&images)
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Caller guarantees `images` is a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                if a as usize >= degree || b as usize >= degree {
                    return Err(Error::PointOutOfRange {
                        point: a.max(b) as usize,
                        degree,
                    });
                }
                if touched[a as usize] {
                    return Err(Error::MalformedGenerator(format!(
                        "point {a} repeated in cycles"
                    )));
                }
                touched[a as usize] = true;
                images[a as usize] = b;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn into_images(self) -> Vec<u32> {
        self.images
    }

    #[inline]
    pub fn image(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn act(&self, point: usize) -> Result<usize> {
        self.images
            .get(point)
            .map(|&x| x as usize)
            .ok_or(Error::PointOutOfRange {
                point,
                degree: self.degree(),
            })
    }

    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    /// `self` followed by `other`; degrees must agree.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        let o = &other.images;
        Permutation {
            images: self.images.iter().map(|&x| o[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `other⁻¹ · self · other`.
    pub fn conjugate_by(&self, other: &Permutation) -> Permutation {
        let mut out = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            out[other.images[i] as usize] = other.images[x as usize];
        }
        Permutation { images: out }
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn moved_count(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i as u32 != x)
            .count()
    }

    pub fn fixed_count(&self) -> usize {
        self.degree() - self.moved_count()
    }

    pub fn smallest_moved(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    /// Non-trivial cycles, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut x = self.images[start] as usize;
            while x != start {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }
}

impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn truncated(v: &[u32]) -> &[u32] {
    &v[..v.len().min(16)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_cycle_squared() {
        let c = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let expect = Permutation::from_cycles(3, &[&[0, 2, 1]]).unwrap();
        assert_eq!(c.compose(&c).unwrap(), expect);
    }

    #[test]
    fn inverse_of_identity() {
        let e = Permutation::identity(6);
        assert_eq!(e.inverse(), e);
    }

    #[test]
    fn transposition_moves_zero() {
        let t = Permutation::from_cycles(2, &[&[0, 1]]).unwrap();
        assert_eq!(t.act(0).unwrap(), 1);
    }

    #[test]
    fn composition_order_is_left_to_right() {
        let p = Permutation::from_images(vec![1, 2, 0]).unwrap();
        let q = Permutation::from_images(vec![0, 2, 1]).unwrap();
        let pq = p.compose(&q).unwrap();
        for i in 0..3u32 {
            assert_eq!(pq.image(i), q.image(p.image(i)));
        }
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(matches!(
            Permutation::from_images(vec![0, 0, 1]),
            Err(Error::MalformedGenerator(_))
        ));
    }

    #[test]
    fn degree_mismatch() {
        let a = Permutation::identity(2);
        let b = Permutation::identity(3);
        assert_eq!(a.compose(&b), Err(Error::DegreeMismatch(2, 3)));
    }

    #[test]
    fn order_and_power() {
        let p = Permutation::from_cycles(7, &[&[0, 1], &[2, 3, 4]]).unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.pow(6).is_identity());
        assert_eq!(p.pow(-1), p.inverse());
        assert_eq!(p.to_string(), "(0 1)(2 3 4)");
    }

    #[test]
    fn conjugation_matches_definition() {
        let x = Permutation::from_images(vec![1, 2, 0, 3]).unwrap();
        let g = Permutation::from_images(vec![3, 0, 1, 2]).unwrap();
        let direct = g.inverse().then(&x).then(&g);
        assert_eq!(x.conjugate_by(&g), direct);
    }
}
