use serde::Serialize;

use crate::base::regular_orbits;
use crate::constructions::{pair_index_table, pairs_action, projective_family, Family, ProjectiveLine};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OrbitKind {
    /// Orbit inside the pairs `{<e1>, <e1 + c e2>}` and `{<e2>, <e1 + c e2>}`
    /// with `c != 0`, holding `r1` pairs of the first shape and `r2` of the
    /// second.
    Axis { r1: usize, r2: usize },
    /// Pairs `{<e1 + s e2>, <e1 + t e2>}` with `-s/t` a non-square.
    Rst { s: u32, t: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtlasOrbit {
    /// Least point of the orbit in the pairs action.
    pub rep: u32,
    pub kind: OrbitKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitAtlas {
    pub q: u32,
    pub a: u32,
    pub expected: u32,
    pub orbits: Vec<AtlasOrbit>,
    /// Two axis orbits, each split evenly between both shapes; every pair of
    /// the listed shapes lies in a regular orbit; the count is as expected.
    pub consistent: bool,
}

/// Regular orbits of the stabilizer of `{<e1>, <e2>}` in PSL₂(q) acting on
/// unordered pairs of projective points, sorted into the three families.
pub fn psl2_pairs_orbit_atlas(q: u32) -> Result<OrbitAtlas> {
    if q % 2 == 0 || !(7..=49).contains(&q) {
        return Err(Error::UnsupportedField(q));
    }
    let line = ProjectiveLine::new(q)?;
    let k = line.field();
    let n = line.degree();
    let table = pair_index_table(n);
    let mut pairs = vec![(0u32, 0u32); n * (n - 1) / 2];
    for i in 0..n {
        for j in i + 1..n {
            pairs[table[i][j] as usize] = (i as u32, j as u32);
        }
    }
    let e1 = line.point(Some(0));
    let e2 = line.point(None);
    if table[e1 as usize][e2 as usize] != 0 {
        return Err(Error::Internal("pair {<e1>, <e2>} is not point 0".into()));
    }
    let fixture = pairs_action(&projective_family(Family::Psl2, q)?)?;
    let h = fixture.group.point_stabilizer(0)?;
    let part = h.orbit_partition();
    let reg = regular_orbits(&h);
    // 1 for {<e1>, <e1 + c e2>}, 2 for {<e2>, <e1 + c e2>}, 3 for the
    // non-square shape.
    let shape = |pt: u32| -> Option<u8> {
        let (u, v) = pairs[pt as usize];
        match (line.element(u), line.element(v)) {
            (Some(0), Some(c)) | (Some(c), Some(0)) if c != 0 => Some(1),
            (None, Some(c)) | (Some(c), None) if c != 0 => Some(2),
            (Some(s), Some(t)) if s != 0 && t != 0 => {
                (!k.is_square(k.neg(k.div(s, t)))).then_some(3)
            }
            _ => None,
        }
    };
    let mut orbits = Vec::new();
    let mut consistent = true;
    for &rep in &reg.orbit_reps {
        let members: Vec<u32> = (0..pairs.len() as u32)
            .filter(|&p| part.rep_of(p) == rep)
            .collect();
        let shapes: Vec<Option<u8>> = members.iter().map(|&p| shape(p)).collect();
        let count = |s: u8| shapes.iter().filter(|&&x| x == Some(s)).count();
        let (r1, r2, rst) = (count(1), count(2), count(3));
        let kind = if r1 + r2 == members.len() {
            consistent &= r1 == r2;
            OrbitKind::Axis { r1, r2 }
        } else {
            consistent &= rst == members.len();
            let (u, v) = pairs[rep as usize];
            let s = line.element(u).unwrap_or(0);
            let t = line.element(v).unwrap_or(0);
            OrbitKind::Rst { s: s.min(t), t: s.max(t) }
        };
        orbits.push(AtlasOrbit { rep, kind });
    }
    let axis = orbits
        .iter()
        .filter(|o| matches!(o.kind, OrbitKind::Axis { .. }))
        .count();
    consistent &= axis == 2;
    for p in 1..pairs.len() as u32 {
        let is_regular = reg.orbit_reps.contains(&part.rep_of(p));
        if shape(p).is_some() != is_regular {
            consistent = false;
        }
    }
    let a = if q % 4 == 1 { 7 } else { 5 };
    let expected = (q + a) / 4;
    consistent &= orbits.len() == expected as usize;
    Ok(OrbitAtlas {
        q,
        a,
        expected,
        orbits,
        consistent,
    })
}
