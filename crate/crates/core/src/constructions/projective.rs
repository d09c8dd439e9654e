use num_bigint::BigUint;

use super::field::Field;
use super::Fixture;
use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationGroup};

/// The projective line over GF(q): point 0 is infinity, point `1 + c` is
/// the field element with code `c`.
#[derive(Clone, Debug)]
pub struct ProjectiveLine {
    field: Field,
}

pub const INFINITY: u32 = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Psl2,
    Pgl2,
    Psigmal2,
    Pgammal2,
}

impl ProjectiveLine {
    pub fn new(q: u32) -> Result<Self> {
        if q < 4 {
            return Err(Error::UnsupportedField(q));
        }
        Ok(ProjectiveLine {
            field: Field::new(q)?,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn degree(&self) -> usize {
        self.q() as usize + 1
    }

    pub fn point(&self, z: Option<u32>) -> u32 {
        z.map_or(INFINITY, |c| c + 1)
    }

    pub fn element(&self, point: u32) -> Option<u32> {
        (point != INFINITY).then(|| point - 1)
    }

    /// Action of the row-vector matrix `[[a, b], [c, d]]`.
    pub fn matrix(&self, a: u32, b: u32, c: u32, d: u32) -> Permutation {
        let k = &self.field;
        let det = k.sub(k.mul(a, d), k.mul(b, c));
        assert!(det != 0, "singular matrix");
        let images = (0..self.degree() as u32)
            .map(|pt| match self.element(pt) {
                None => {
                    if c == 0 {
                        INFINITY
                    } else {
                        self.point(Some(k.div(d, c)))
                    }
                }
                Some(z) => {
                    let den = k.add(a, k.mul(z, c));
                    if den == 0 {
                        INFINITY
                    } else {
                        self.point(Some(k.div(k.add(b, k.mul(z, d)), den)))
                    }
                }
            })
            .collect();
        Permutation::from_images(images).expect("Möbius map is a bijection")
    }

    pub fn frobenius(&self) -> Permutation {
        let images = (0..self.degree() as u32)
            .map(|pt| match self.element(pt) {
                None => INFINITY,
                Some(z) => self.point(Some(self.field.frobenius(z))),
            })
            .collect();
        Permutation::from_images(images).expect("field automorphism is a bijection")
    }

    pub fn psl2_generators(&self) -> Vec<Permutation> {
        let k = &self.field;
        let w = k.primitive();
        vec![
            self.matrix(1, 1, 0, 1),
            self.matrix(w, 0, 0, k.inv(w)),
            self.matrix(0, 1, k.neg(1), 0),
        ]
    }

    /// `diag(ω, 1)`, outside PSL₂ when q is odd.
    pub fn delta(&self) -> Permutation {
        self.matrix(self.field.primitive(), 0, 0, 1)
    }

    pub fn psl2_order(&self) -> BigUint {
        let q = self.q() as u64;
        let g = if q % 2 == 1 { 2 } else { 1 };
        BigUint::from(q * (q * q - 1) / g)
    }
}

/// The requested projective family acting on the projective line.
pub fn projective_family(family: Family, q: u32) -> Result<Fixture> {
    let line = ProjectiveLine::new(q)?;
    let n = line.degree();
    let f = line.field().degree() as u64;
    let qq = q as u64;
    let pgl_order = BigUint::from(qq * (qq * qq - 1));
    let socle_gens = line.psl2_generators();
    let socle = PermutationGroup::new(n, socle_gens.clone())?.with_known_order(line.psl2_order());
    let (outer, order, name) = match family {
        Family::Psl2 => (vec![], line.psl2_order(), format!("psl2:{q}")),
        Family::Pgl2 => (vec![line.delta()], pgl_order, format!("pgl2:{q}")),
        Family::Psigmal2 => (
            vec![line.frobenius()],
            line.psl2_order() * BigUint::from(f),
            format!("psigmal2:{q}"),
        ),
        Family::Pgammal2 => (
            vec![line.delta(), line.frobenius()],
            pgl_order * BigUint::from(f),
            format!("pgaml2:{q}"),
        ),
    };
    let outer: Vec<Permutation> = outer.into_iter().filter(|x| !socle.contains(x)).collect();
    let mut gens = socle_gens;
    gens.extend(outer.iter().cloned());
    let group = PermutationGroup::new(n, gens)?.with_known_order(order);
    group.try_chain()?;
    Ok(Fixture {
        name,
        group,
        socle: Some(socle),
        outer,
    })
}

/// The index-2 overgroup of PSL₂(9) in PΓL₂(9) with an element of order 8
/// and none of order 10.
pub fn m10() -> Result<Fixture> {
    let line = ProjectiveLine::new(9)?;
    let socle_gens = line.psl2_generators();
    let socle = PermutationGroup::new(10, socle_gens.clone())?.with_known_order(line.psl2_order());
    let d = line.delta();
    let phi = line.frobenius();
    let candidates = [d.clone(), phi.clone(), d.then(&phi)];
    let mut chosen = Vec::new();
    for x in candidates {
        let mut gens = socle_gens.clone();
        gens.push(x.clone());
        let g = PermutationGroup::new(10, gens)?.with_known_order(BigUint::from(720u32));
        g.try_chain()?;
        let classes = crate::perm::conjugacy_classes(&g, 10_000)?;
        let has = |n: u64| classes.classes.iter().any(|c| c.element_order == n);
        if has(8) && !has(10) {
            chosen.push((g, x));
        }
    }
    if chosen.len() != 1 {
        return Err(Error::Internal(format!(
            "{} candidates satisfy the M10 selection rule",
            chosen.len()
        )));
    }
    let (group, x) = chosen.pop().expect("one candidate");
    Ok(Fixture {
        name: "m10".into(),
        group,
        socle: Some(socle),
        outer: vec![x],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::is_k_transitive;

    #[test]
    fn projective_orders() {
        for q in [4u32, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49] {
            let f = Field::new(q).unwrap().degree() as u64;
            let qq = q as u64;
            let psl = qq * (qq * qq - 1) / if q % 2 == 1 { 2 } else { 1 };
            let cases = [
                (Family::Psl2, psl),
                (Family::Pgl2, qq * (qq * qq - 1)),
                (Family::Psigmal2, psl * f),
                (Family::Pgammal2, qq * (qq * qq - 1) * f),
            ];
            for (fam, order) in cases {
                let fx = projective_family(fam, q).unwrap();
                let free = PermutationGroup::new(fx.group.degree(), fx.group.generators().to_vec())
                    .unwrap();
                assert_eq!(free.order(), BigUint::from(order), "{fam:?} {q}");
            }
        }
    }

    #[test]
    fn m10_rule_selects_one_group() {
        let m = m10().unwrap();
        assert_eq!(m.group.order(), BigUint::from(720u32));
        assert!(is_k_transitive(&m.group, 3).unwrap());
        assert!(!is_k_transitive(&m.group, 4).unwrap());
        let s6 = projective_family(Family::Psigmal2, 9).unwrap();
        assert!(!is_k_transitive(&s6.group, 3).unwrap());
        let pgl = projective_family(Family::Pgl2, 9).unwrap();
        assert!(is_k_transitive(&pgl.group, 3).unwrap());
        let orders: Vec<u64> = crate::perm::conjugacy_classes(&m.group, 1000)
            .unwrap()
            .classes
            .iter()
            .map(|c| c.element_order)
            .collect();
        assert!(orders.contains(&8) && !orders.contains(&10) && !orders.contains(&6));
    }

    #[test]
    fn psl2_on_six_points() {
        let g = projective_family(Family::Psl2, 5).unwrap().group;
        assert_eq!(g.point_stabilizer(0).unwrap().order(), BigUint::from(10u32));
        assert!(crate::perm::is_primitive(&g).unwrap());
    }
}
