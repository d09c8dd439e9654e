use std::collections::HashMap;
use std::sync::Arc;

use super::permutation::Permutation;

const ABSENT: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

#[derive(Clone, Debug)]
enum Labels {
    Dense(Vec<u32>),
    Sparse(HashMap<u32, u32>),
}

impl Labels {
    fn get(&self, p: u32) -> u32 {
        match self {
            Labels::Dense(v) => v[p as usize],
            Labels::Sparse(m) => m.get(&p).copied().unwrap_or(ABSENT),
        }
    }

    fn set(&mut self, p: u32, label: u32) {
        match self {
            Labels::Dense(v) => v[p as usize] = label,
            Labels::Sparse(m) => {
                m.insert(p, label);
            }
        }
    }

    fn densify(&mut self, degree: usize) {
        if let Labels::Sparse(m) = self {
            let mut v = vec![ABSENT; degree];
            for (&p, &l) in m.iter() {
                v[p as usize] = l;
            }
            *self = Labels::Dense(v);
        }
    }
}

/// Orbit of a root point with a Schreier vector over the generators and
/// their inverses.
///
/// Edge label `2i` means the point was reached by `gens[i]`, `2i + 1` by its
/// inverse.
#[derive(Clone, Debug)]
pub struct SchreierTree {
    root: u32,
    degree: usize,
    gens: Vec<Arc<Permutation>>,
    inverses: Vec<Arc<Permutation>>,
    orbit: Vec<u32>,
    labels: Labels,
}

impl SchreierTree {
    pub fn new(root: u32, degree: usize, gens: Vec<Arc<Permutation>>) -> Self {
        let inverses = gens.iter().map(|g| Arc::new(g.inverse())).collect();
        Self::with_inverses(root, degree, gens, inverses)
    }

    pub(crate) fn with_inverses(
        root: u32,
        degree: usize,
        gens: Vec<Arc<Permutation>>,
        inverses: Vec<Arc<Permutation>>,
    ) -> Self {
        let mut labels = Labels::Sparse(HashMap::new());
        labels.set(root, ROOT);
        let mut tree = SchreierTree {
            root,
            degree,
            gens,
            inverses,
            orbit: vec![root],
            labels,
        };
        tree.close_from(0, 0);
        tree
    }

    fn dense_threshold(&self) -> usize {
        (self.degree / 32).max(64)
    }

    fn push(&mut self, y: u32, label: u32) {
        self.labels.set(y, label);
        self.orbit.push(y);
        if self.orbit.len() == self.dense_threshold() {
            self.labels.densify(self.degree);
        }
    }

    /// Applies generators `first_gen..` to points before `start`, then all
    /// generators to every later point.
    fn close_from(&mut self, start: usize, first_gen: usize) {
        let ngens = self.gens.len();
        for i in 0..start {
            let x = self.orbit[i];
            for g in first_gen..ngens {
                for side in 0..2 {
                    let y = if side == 0 {
                        self.gens[g].image(x)
                    } else {
                        self.inverses[g].image(x)
                    };
                    if self.labels.get(y) == ABSENT {
                        self.push(y, (2 * g + side) as u32);
                    }
                }
            }
        }
        let mut i = start;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for g in 0..ngens {
                for side in 0..2 {
                    let y = if side == 0 {
                        self.gens[g].image(x)
                    } else {
                        self.inverses[g].image(x)
                    };
                    if self.labels.get(y) == ABSENT {
                        self.push(y, (2 * g + side) as u32);
                    }
                }
            }
            i += 1;
        }
    }

    /// Adds a generator and extends the orbit in place.
    pub(crate) fn add_generator(&mut self, g: Arc<Permutation>, inv: Arc<Permutation>) {
        let first = self.gens.len();
        self.gens.push(g);
        self.inverses.push(inv);
        let old = self.orbit.len();
        self.close_from(old, first);
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Arc<Permutation>] {
        &self.gens
    }

    /// Orbit points in discovery order; the root comes first.
    pub fn orbit(&self) -> &[u32] {
        &self.orbit
    }

    pub fn sorted_orbit(&self) -> Vec<u32> {
        let mut v = self.orbit.clone();
        v.sort_unstable();
        v
    }

    pub fn len(&self) -> usize {
        self.orbit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbit.is_empty()
    }

    pub fn contains(&self, p: u32) -> bool {
        (p as usize) < self.degree && self.labels.get(p) != ABSENT
    }

    fn edge(&self, e: u32) -> &Permutation {
        let i = (e / 2) as usize;
        if e % 2 == 0 {
            &self.gens[i]
        } else {
            &self.inverses[i]
        }
    }

    fn edge_inverse(&self, e: u32) -> &Permutation {
        let i = (e / 2) as usize;
        if e % 2 == 0 {
            &self.inverses[i]
        } else {
            &self.gens[i]
        }
    }

    /// Inverse edges leading from `p` back to the root, in application order.
    pub(crate) fn inverse_word(&self, p: u32) -> Vec<&Permutation> {
        let mut word = Vec::new();
        let mut x = p;
        loop {
            let l = self.labels.get(x);
            debug_assert_ne!(l, ABSENT);
            if l == ROOT {
                break;
            }
            let inv = self.edge_inverse(l);
            word.push(inv);
            x = inv.image(x);
        }
        word
    }

    /// Edges leading from the root to `p`, in application order.
    pub(crate) fn forward_word(&self, p: u32) -> Vec<&Permutation> {
        let mut x = p;
        let mut out = Vec::new();
        loop {
            let l = self.labels.get(x);
            if l == ROOT {
                break;
            }
            out.push(self.edge(l));
            x = self.edge_inverse(l).image(x);
        }
        out.reverse();
        out
    }

    /// Witness `u` with `root^u = p`.
    pub fn transversal(&self, p: u32) -> Option<Permutation> {
        if !self.contains(p) {
            return None;
        }
        let id = Permutation::identity(self.degree);
        Some(apply_word(&id, &self.forward_word(p)))
    }

    /// `g · u_p⁻¹`.
    pub(crate) fn strip(&self, g: &Permutation, p: u32) -> Permutation {
        apply_word(g, &self.inverse_word(p))
    }

    /// `g · u_p`.
    pub(crate) fn extend(&self, g: &Permutation, p: u32) -> Permutation {
        apply_word(g, &self.forward_word(p))
    }

    /// Image of a single point under `u_p⁻¹`.
    pub fn inverse_image(&self, p: u32, point: u32) -> u32 {
        self.inverse_word(p).iter().fold(point, |x, w| w.image(x))
    }

    /// Image of a single point under `u_p`.
    pub fn forward_image(&self, p: u32, point: u32) -> u32 {
        self.forward_word(p).iter().fold(point, |x, w| w.image(x))
    }
}

pub(crate) fn apply_word(g: &Permutation, word: &[&Permutation]) -> Permutation {
    if word.is_empty() {
        return g.clone();
    }
    let images = g
        .images()
        .iter()
        .map(|&x| word.iter().fold(x, |y, w| w.image(y)))
        .collect();
    Permutation::from_images_unchecked(images)
}

/// Orbits of a group on its points, from union–find over the generators.
///
/// Every point is labelled by the least point of its orbit.
#[derive(Clone, Debug)]
pub struct OrbitPartition {
    rep: Vec<u32>,
    size: Vec<u32>,
}

impl OrbitPartition {
    pub fn new<'a, I>(degree: usize, gens: I) -> Self
    where
        I: IntoIterator<Item = &'a Permutation>,
    {
        let mut uf = UnionFind::new(degree);
        for g in gens {
            for (x, &y) in g.images().iter().enumerate() {
                uf.union(x as u32, y);
            }
        }
        let (rep, size) = uf.classes();
        OrbitPartition { rep, size }
    }

    pub fn degree(&self) -> usize {
        self.rep.len()
    }

    /// Least point of the orbit of `p`.
    pub fn rep_of(&self, p: u32) -> u32 {
        self.rep[p as usize]
    }

    pub fn size_of(&self, p: u32) -> usize {
        self.size[self.rep[p as usize] as usize] as usize
    }

    /// Orbit representatives in increasing order.
    pub fn reps(&self) -> Vec<u32> {
        (0..self.rep.len() as u32)
            .filter(|&p| self.rep[p as usize] == p)
            .collect()
    }

    pub fn num_orbits(&self) -> usize {
        self.rep
            .iter()
            .enumerate()
            .filter(|&(i, &r)| i as u32 == r)
            .count()
    }

    pub fn max_size(&self) -> usize {
        self.size.iter().copied().max().unwrap_or(0) as usize
    }

    /// Sorted orbits, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut index = vec![usize::MAX; self.rep.len()];
        let mut out: Vec<Vec<u32>> = Vec::new();
        for (p, &r) in self.rep.iter().enumerate() {
            if index[r as usize] == usize::MAX {
                index[r as usize] = out.len();
                out.push(Vec::new());
            }
            out[index[r as usize]].push(p as u32);
        }
        out
    }

    pub fn reps_with_size(&self, size: usize) -> Vec<u32> {
        self.reps()
            .into_iter()
            .filter(|&r| self.size[r as usize] as usize == size)
            .collect()
    }
}

/// Union–find over `0..n` keeping the least element of each class as root.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra < rb {
            self.parent[rb as usize] = ra;
            true
        } else if rb < ra {
            self.parent[ra as usize] = rb;
            true
        } else {
            false
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Root label and class size (indexed by root) for every element.
    pub fn classes(&mut self) -> (Vec<u32>, Vec<u32>) {
        let n = self.parent.len();
        let mut root = vec![0u32; n];
        let mut size = vec![0u32; n];
        for x in 0..n {
            let r = self.find(x as u32);
            root[x] = r;
            size[r as usize] += 1;
        }
        (root, size)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schreier_tree_witnesses() {
        let g = Arc::new(Permutation::from_cycles(6, &[&[0, 1, 2]]).unwrap());
        let h = Arc::new(Permutation::from_cycles(6, &[&[2, 3]]).unwrap());
        let t = SchreierTree::new(0, 6, vec![g, h]);
        assert_eq!(t.sorted_orbit(), vec![0, 1, 2, 3]);
        for &p in t.orbit() {
            let u = t.transversal(p).unwrap();
            assert_eq!(u.image(0), p);
            assert_eq!(t.inverse_image(p, p), 0);
            assert_eq!(t.forward_image(p, 0), p);
        }
        assert!(!t.contains(4));
        assert!(t.transversal(5).is_none());
    }

    #[test]
    fn adding_a_generator_extends_the_orbit() {
        let g = Arc::new(Permutation::from_cycles(6, &[&[0, 1]]).unwrap());
        let mut t = SchreierTree::new(0, 6, vec![g]);
        assert_eq!(t.len(), 2);
        let h = Permutation::from_cycles(6, &[&[1, 4, 5]]).unwrap();
        let hi = h.inverse();
        t.add_generator(Arc::new(h), Arc::new(hi));
        assert_eq!(t.sorted_orbit(), vec![0, 1, 4, 5]);
        for &p in t.orbit() {
            assert_eq!(t.transversal(p).unwrap().image(0), p);
        }
    }

    #[test]
    fn union_find_orbits() {
        let g = Permutation::from_cycles(7, &[&[0, 3], &[4, 6]]).unwrap();
        let h = Permutation::from_cycles(7, &[&[3, 5]]).unwrap();
        let part = OrbitPartition::new(7, [&g, &h]);
        assert_eq!(
            part.orbits(),
            vec![vec![0, 3, 5], vec![1], vec![2], vec![4, 6]]
        );
        assert_eq!(part.reps(), vec![0, 1, 2, 4]);
        assert_eq!(part.size_of(5), 3);
    }
}
