//! Saxl graphs of base-two transitive groups: vertices are points, edges
//! are bases of size two.

mod atlas;

pub use atlas::{psl2_pairs_orbit_atlas, AtlasOrbit, OrbitAtlas, OrbitKind};

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::par;
use crate::perm::{enumerate_elements, OrbitPartition, Permutation, PermutationGroup};

/// Largest `degree * valency` for neighbourhood sweeps.
pub const DEFAULT_SWEEP_BUDGET: u64 = 200_000_000;
/// Largest degree for DOT export.
pub const MAX_DOT_DEGREE: usize = 2000;
/// Largest degree for the all-pairs cross-check.
pub const MAX_BRUTE_DEGREE: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaxlReport {
    pub degree: usize,
    pub valency: u64,
    pub r: usize,
    pub h_order: u64,
    pub eulerian: bool,
    pub diameter: Option<usize>,
    /// Eccentricities from sampled start vertices all agreed.
    pub eccentricity_consistent: Option<bool>,
    pub star: Option<bool>,
    pub star_star: Option<bool>,
    pub star_star_double_coset: Option<bool>,
}

/// Neighbourhood data at point 0.
pub struct SaxlGraph<'a> {
    group: &'a PermutationGroup,
    h: PermutationGroup,
    h_order: u64,
    suborbits: OrbitPartition,
    /// Sorted neighbours of point 0.
    sigma0: Vec<u32>,
    in_sigma0: Vec<bool>,
}

impl<'a> SaxlGraph<'a> {
    pub fn new(group: &'a PermutationGroup) -> Result<Self> {
        if !group.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let h = group.point_stabilizer(0)?;
        let h_order = h
            .order()
            .to_u64()
            .ok_or_else(|| Error::Internal("stabilizer order overflows".into()))?;
        let suborbits = h.orbit_partition();
        let sigma0: Vec<u32> = (0..group.degree() as u32)
            .filter(|&p| p != 0 && suborbits.size_of(p) as u64 == h_order)
            .collect();
        if sigma0.is_empty() {
            return Err(Error::NoSaxlGraph);
        }
        let mut in_sigma0 = vec![false; group.degree()];
        for &p in &sigma0 {
            in_sigma0[p as usize] = true;
        }
        Ok(SaxlGraph {
            group,
            h,
            h_order,
            suborbits,
            sigma0,
            in_sigma0,
        })
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn valency(&self) -> u64 {
        self.sigma0.len() as u64
    }

    /// Number of regular suborbits.
    pub fn r(&self) -> usize {
        (self.sigma0.len() as u64 / self.h_order) as usize
    }

    /// `Σ(0)`.
    pub fn neighbourhood0(&self) -> &[u32] {
        &self.sigma0
    }

    /// Whether `{0, p}` is a base.
    pub fn adjacent_to_0(&self, p: u32) -> bool {
        self.in_sigma0[p as usize]
    }

    /// Element sending 0 to each point.
    fn transversal(&self) -> Result<Vec<Permutation>> {
        let orbit = self.group.orbit(0)?;
        (0..self.degree() as u32)
            .map(|p| {
                orbit
                    .witness(p)
                    .ok_or_else(|| Error::Internal("transitive group misses a point".into()))
            })
            .collect()
    }

    /// `Σ(p)` as the image of `Σ(0)` under an element sending 0 to `p`.
    fn neighbourhood_via(&self, g: &Permutation) -> impl Iterator<Item = u32> + '_ {
        let g = g.clone();
        self.sigma0.iter().map(move |&x| g.image(x))
    }

    fn sweep_ok(&self, budget: u64) -> bool {
        (self.degree() as u64).saturating_mul(self.valency()) <= budget
    }

    /// Eccentricity of `start`, or `None` if some vertex is unreachable.
    pub fn eccentricity(&self, start: u32) -> Result<Option<usize>> {
        let trans = self.transversal()?;
        Ok(self.bfs(&trans, start))
    }

    fn bfs(&self, trans: &[Permutation], start: u32) -> Option<usize> {
        let n = self.degree();
        let mut dist = vec![usize::MAX; n];
        dist[start as usize] = 0;
        let mut queue = VecDeque::from([start]);
        let mut seen = 1;
        let mut ecc = 0;
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            ecc = ecc.max(du);
            for v in self.neighbourhood_via(&trans[u as usize]) {
                if dist[v as usize] == usize::MAX {
                    dist[v as usize] = du + 1;
                    seen += 1;
                    queue.push_back(v);
                }
            }
        }
        (seen == n).then_some(ecc)
    }

    /// Diameter from one BFS, with eccentricities from three sampled
    /// vertices compared.
    pub fn diameter(&self) -> Result<(Option<usize>, bool)> {
        let trans = self.transversal()?;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let n = self.degree() as u32;
        let starts: Vec<u32> = std::iter::once(0)
            .chain((0..3).map(|_| rng.gen_range(0..n)))
            .collect();
        let eccs = par::map(&starts, |&s| self.bfs(&trans, s));
        let consistent = eccs.iter().all(|e| *e == eccs[0]);
        Ok((eccs[0], consistent))
    }

    /// Every pair of points has a common neighbour.
    pub fn star(&self) -> Result<bool> {
        let trans = self.transversal()?;
        Ok(!par::any_range(self.degree() as u64, |p| {
            !self
                .neighbourhood_via(&trans[p as usize])
                .any(|x| self.in_sigma0[x as usize])
        }))
    }

    /// Labels of regular suborbits, indexed by point; `u32::MAX` elsewhere.
    fn regular_labels(&self) -> (Vec<u32>, usize) {
        let mut labels = vec![u32::MAX; self.degree()];
        let mut reps: Vec<u32> = Vec::new();
        for &p in &self.sigma0 {
            let rep = self.suborbits.rep_of(p);
            let idx = match reps.iter().position(|&r| r == rep) {
                Some(i) => i,
                None => {
                    reps.push(rep);
                    reps.len() - 1
                }
            };
            labels[p as usize] = idx as u32;
        }
        (labels, reps.len())
    }

    fn meets_all(&self, sigma: impl Iterator<Item = u32>, labels: &[u32], r: usize) -> bool {
        let mut hit = vec![false; r];
        let mut left = r;
        for x in sigma {
            let l = labels[x as usize];
            if l != u32::MAX && !hit[l as usize] {
                hit[l as usize] = true;
                left -= 1;
                if left == 0 {
                    return true;
                }
            }
        }
        left == 0
    }

    /// `Σ(p)` meets every regular suborbit at 0, over all points `p`.
    pub fn star_star(&self) -> Result<bool> {
        let trans = self.transversal()?;
        let (labels, r) = self.regular_labels();
        Ok(!par::any_range(self.degree() as u64, |p| {
            !self.meets_all(self.neighbourhood_via(&trans[p as usize]), &labels, r)
        }))
    }

    /// The same condition through `(H, H)` double cosets: for every
    /// representative `x` and every `y` with `|HyH| = |H|^2`, some `z` in
    /// `HyH` has `H ∩ H^z = H^x ∩ H^z = 1` with `0^z` distinct from `0` and
    /// `0^x`.
    pub fn star_star_double_coset(&self, bound: u64) -> Result<bool> {
        let h_elems = enumerate_elements(&self.h, bound)?;
        let orbit = self.group.orbit(0)?;
        let reps = self.suborbits.reps();
        let xs: Vec<Permutation> = reps
            .iter()
            .map(|&p| orbit.witness(p).expect("transitive"))
            .collect();
        let square = (self.h_order * self.h_order) as usize;
        let mut ys = Vec::new();
        for x in &xs {
            let mut coset: HashSet<Permutation> = HashSet::new();
            for a in &h_elems {
                let ax = a.then(x);
                for b in &h_elems {
                    coset.insert(ax.then(b));
                }
            }
            if coset.len() == square {
                ys.push(x.clone());
            }
        }
        let trivial = |a: u32, b: u32| -> Result<bool> {
            Ok(self.group.pointwise_stabilizer(&[a, b])?.is_trivial())
        };
        let pairs: Vec<(usize, usize)> = (0..xs.len())
            .flat_map(|i| (0..ys.len()).map(move |j| (i, j)))
            .collect();
        let results = par::map(&pairs, |&(i, j)| -> Result<bool> {
            let x0 = xs[i].image(0);
            for a in &h_elems {
                let ya = ys[j].then(a);
                for b in &h_elems {
                    let z0 = b.then(&ya).image(0);
                    if z0 != 0 && z0 != x0 && trivial(0, z0)? && trivial(x0, z0)? {
                        return Ok(true);
                    }
                }
            }
            Ok(false)
        });
        for r in results {
            if !r? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Graphviz description of the whole graph.
    pub fn to_dot(&self, name: &str) -> Result<String> {
        if self.degree() > MAX_DOT_DEGREE {
            return Err(Error::BudgetExhausted(format!(
                "DOT export needs degree <= {MAX_DOT_DEGREE}"
            )));
        }
        let trans = self.transversal()?;
        let mut out = String::new();
        writeln!(out, "graph \"{}\" {{", name.replace('"', "'")).expect("write to string");
        for u in 0..self.degree() as u32 {
            let mut nb: Vec<u32> = self
                .neighbourhood_via(&trans[u as usize])
                .filter(|&v| v > u)
                .collect();
            nb.sort_unstable();
            for v in nb {
                writeln!(out, "  {u} -- {v};").expect("write to string");
            }
        }
        out.push_str("}\n");
        Ok(out)
    }
}

/// Valency and parity only.
pub fn saxl_summary(group: &PermutationGroup) -> Result<SaxlReport> {
    let g = SaxlGraph::new(group)?;
    Ok(SaxlReport {
        degree: g.degree(),
        valency: g.valency(),
        r: g.r(),
        h_order: g.h_order,
        eulerian: g.valency() % 2 == 0,
        diameter: None,
        eccentricity_consistent: None,
        star: None,
        star_star: None,
        star_star_double_coset: None,
    })
}

/// Full report; sweeps over all points run only within `sweep_budget`, and
/// the double-coset check only up to `MAX_BRUTE_DEGREE` points.
pub fn saxl_report(group: &PermutationGroup, sweep_budget: u64) -> Result<SaxlReport> {
    let g = SaxlGraph::new(group)?;
    let mut report = saxl_summary(group)?;
    if g.sweep_ok(sweep_budget) {
        let (d, consistent) = g.diameter()?;
        report.diameter = d;
        report.eccentricity_consistent = Some(consistent);
        report.star = Some(g.star()?);
        report.star_star = Some(g.star_star()?);
    }
    if g.degree() <= MAX_BRUTE_DEGREE {
        report.star_star_double_coset = Some(g.star_star_double_coset(10_000_000)?);
    }
    Ok(report)
}
