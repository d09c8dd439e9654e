use num_bigint::BigUint;
use num_traits::One;

use super::group::PermutationGroup;
use super::orbits::OrbitPartition;
use super::permutation::Permutation;
use crate::error::{Error, Result};

/// Per-level data for the search: base point and its full transversal.
struct Level {
    base: u32,
    orbit: Vec<u32>,
    reps: Vec<Permutation>,
}

struct Search<'a> {
    levels: Vec<Level>,
    colors: &'a [u32],
}

impl Search<'_> {
    fn new<'a>(group: &PermutationGroup, colors: &'a [u32]) -> Search<'a> {
        let chain = group.chain();
        let levels = chain
            .levels()
            .iter()
            .map(|l| {
                let orbit = l.sorted_orbit();
                let reps = orbit
                    .iter()
                    .map(|&p| l.transversal(p).expect("orbit point"))
                    .collect();
                Level {
                    base: l.root(),
                    orbit,
                    reps,
                }
            })
            .collect();
        Search { levels, colors }
    }

    fn preserves(&self, g: &Permutation) -> bool {
        g.images()
            .iter()
            .enumerate()
            .all(|(i, &x)| self.colors[i] == self.colors[x as usize])
    }

    /// Element of the level-`i` stabilizer sending `base[i]` to the point
    /// at orbit index `k` that preserves the coloring.
    fn find(&self, i: usize, k: usize) -> Option<Permutation> {
        let h = self.levels[i].reps[k].clone();
        self.descend(i + 1, h)
    }

    fn descend(&self, j: usize, h: Permutation) -> Option<Permutation> {
        if j == self.levels.len() {
            return self.preserves(&h).then_some(h);
        }
        let level = &self.levels[j];
        let want = self.colors[level.base as usize];
        for (q, t) in level.orbit.iter().zip(&level.reps) {
            let img = h.image(*q);
            if self.colors[img as usize] != want {
                continue;
            }
            if let Some(g) = self.descend(j + 1, t.then(&h)) {
                return Some(g);
            }
        }
        None
    }
}

/// Generators of the stabilizer, with its order, or `None` in
/// `stop_at_first` mode once a non-identity element is found.
fn run(
    group: &PermutationGroup,
    colors: &[u32],
    stop_at_first: bool,
) -> Result<Option<(Vec<Permutation>, BigUint)>> {
    if colors.len() != group.degree() {
        return Err(Error::DegreeMismatch(group.degree(), colors.len()));
    }
    let search = Search::new(group, colors);
    let degree = group.degree();
    let mut found: Vec<Permutation> = Vec::new();
    let mut order = BigUint::one();
    for i in (0..search.levels.len()).rev() {
        let level = &search.levels[i];
        let want = colors[level.base as usize];
        let mut part = OrbitPartition::new(degree, found.iter());
        let mut failed: Vec<u32> = Vec::new();
        for (k, &p) in level.orbit.iter().enumerate() {
            if p == level.base || colors[p as usize] != want {
                continue;
            }
            let rp = part.rep_of(p);
            if rp == part.rep_of(level.base) || failed.iter().any(|&f| part.rep_of(f) == rp) {
                continue;
            }
            match search.find(i, k) {
                Some(g) => {
                    if stop_at_first {
                        return Ok(None);
                    }
                    found.push(g);
                    part = OrbitPartition::new(degree, found.iter());
                }
                None => failed.push(p),
            }
        }
        order *= BigUint::from(part.size_of(level.base));
    }
    Ok(Some((found, order)))
}

/// Subgroup of elements `g` with `colors[x^g] == colors[x]` for every `x`.
pub fn coloring_stabilizer(group: &PermutationGroup, colors: &[u32]) -> Result<PermutationGroup> {
    let (gens, order) = run(group, colors, false)?.expect("full search");
    Ok(PermutationGroup::new(group.degree(), gens)?.with_known_order(order))
}

/// Whether only the identity preserves the coloring.
pub fn coloring_stabilizer_is_trivial(group: &PermutationGroup, colors: &[u32]) -> Result<bool> {
    Ok(run(group, colors, true)?.is_some())
}

/// Setwise stabilizer of `set`.
pub fn setwise_stabilizer(group: &PermutationGroup, set: &[u32]) -> Result<PermutationGroup> {
    let mut colors = vec![0u32; group.degree()];
    for &x in set {
        if x as usize >= group.degree() {
            return Err(Error::PointOutOfRange {
                point: x as usize,
                degree: group.degree(),
            });
        }
        colors[x as usize] = 1;
    }
    coloring_stabilizer(group, &colors)
}
