use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::orbits::SchreierTree;
use super::permutation::Permutation;
use crate::error::{Error, Result};

pub const DEFAULT_SEED: u64 = 0x9e37_79b9_7f4a_7c15;

/// Consecutive non-improving random sifts tolerated before giving up on a
/// claimed order.
const STALL_LIMIT: usize = 400;
const CONFIRM_SIFTS: usize = 10;
const QUIET_SIFTS: usize = 30;

/// Base, strong generators and Schreier vectors for a permutation group.
///
/// Level `i` holds the orbit of `base[i]` under the stabilizer of
/// `base[..i]`; generators are shared across levels.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Arc<SchreierTree>>,
}

#[derive(Clone, Debug, Default)]
pub struct ChainOptions {
    pub prefix: Vec<u32>,
    pub known_order: Option<BigUint>,
    pub seed: Option<u64>,
}

impl StabChain {
    pub fn trivial(degree: usize) -> Self {
        StabChain {
            degree,
            levels: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.root()).collect()
    }

    pub fn levels(&self) -> &[Arc<SchreierTree>] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.len()))
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.iter().all(|l| l.len() == 1)
    }

    /// Strips `g` through the chain; returns the residue and the level where
    /// stripping stopped (`len()` if it went all the way).
    pub fn sift(&self, g: &Permutation) -> (Permutation, usize) {
        sift_levels(self.levels.iter().map(|l| l.as_ref()), g, 0)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, _) = self.sift(g);
        h.is_identity()
    }

    /// Strong generators of the whole group.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        match self.levels.first() {
            Some(l) => l.generators().iter().map(|g| (**g).clone()).collect(),
            None => Vec::new(),
        }
    }

    /// Chain of the pointwise stabilizer of `base[..from]`.
    pub fn tail(&self, from: usize) -> StabChain {
        StabChain {
            degree: self.degree,
            levels: self.levels[from.min(self.levels.len())..].to_vec(),
        }
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let p = level.orbit()[rng.gen_range(0..level.len())];
            g = level.extend(&g, p);
        }
        g
    }
}

fn sift_levels<'a, I>(levels: I, g: &Permutation, start: usize) -> (Permutation, usize)
where
    I: Iterator<Item = &'a SchreierTree>,
{
    let mut g = g.clone();
    let mut depth = start;
    for level in levels.skip(start) {
        let p = g.image(level.root());
        if !level.contains(p) {
            return (g, depth);
        }
        if p != level.root() {
            g = level.strip(&g, p);
        }
        depth += 1;
    }
    (g, depth)
}

enum Source<'a> {
    Chain(&'a StabChain),
    Replacement {
        slots: Vec<Permutation>,
        acc: Permutation,
    },
    Trivial,
}

impl Source<'_> {
    fn next(&mut self, rng: &mut ChaCha8Rng) -> Option<Permutation> {
        match self {
            Source::Chain(c) => Some(c.random_element(rng)),
            Source::Trivial => None,
            Source::Replacement { slots, acc } => {
                let n = slots.len();
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n - 1);
                if j >= i {
                    j += 1;
                }
                let other = if rng.gen_bool(0.5) {
                    slots[j].clone()
                } else {
                    slots[j].inverse()
                };
                slots[i] = if rng.gen_bool(0.5) {
                    slots[i].then(&other)
                } else {
                    other.then(&slots[i])
                };
                *acc = acc.then(&slots[i]);
                Some(acc.clone())
            }
        }
    }
}

struct Builder {
    degree: usize,
    base: Vec<u32>,
    strong: Vec<(Arc<Permutation>, Arc<Permutation>)>,
    depth: Vec<usize>,
    levels: Vec<SchreierTree>,
}

impl Builder {
    fn new(degree: usize, prefix: &[u32]) -> Self {
        let levels = prefix
            .iter()
            .map(|&b| SchreierTree::with_inverses(b, degree, Vec::new(), Vec::new()))
            .collect();
        Builder {
            degree,
            base: prefix.to_vec(),
            strong: Vec::new(),
            depth: Vec::new(),
            levels,
        }
    }

    fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.len()))
    }

    fn sift_from(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        sift_levels(self.levels.iter(), g, start)
    }

    fn fixed_prefix(&self, g: &Permutation) -> usize {
        self.base
            .iter()
            .take_while(|&&b| g.image(b) == b)
            .count()
    }

    /// Records a non-trivial residue that fixes `base[..j]`.
    fn add(&mut self, h: Permutation, j: usize) {
        debug_assert!(!h.is_identity());
        if j == self.base.len() {
            let b = h.smallest_moved().expect("non-identity residue");
            self.base.push(b);
            for (d, (s, _)) in self.depth.iter_mut().zip(&self.strong) {
                if *d == j && s.image(b) == b {
                    *d += 1;
                }
            }
            let gens: Vec<_> = self
                .strong
                .iter()
                .zip(&self.depth)
                .filter(|(_, &d)| d >= j)
                .map(|(s, _)| s.clone())
                .collect();
            let (g, i): (Vec<_>, Vec<_>) = gens.into_iter().unzip();
            self.levels
                .push(SchreierTree::with_inverses(b, self.degree, g, i));
        }
        let d = self.fixed_prefix(&h);
        let inv = Arc::new(h.inverse());
        let h = Arc::new(h);
        self.strong.push((h.clone(), inv.clone()));
        self.depth.push(d);
        for level in self.levels.iter_mut().take(d + 1) {
            level.add_generator(h.clone(), inv.clone());
        }
    }

    fn absorb(&mut self, g: &Permutation) -> bool {
        let (h, j) = self.sift_from(g, 0);
        if h.is_identity() {
            false
        } else {
            self.add(h, j);
            true
        }
    }

    /// Sims verification: every Schreier generator sifts to the identity.
    fn verify(&mut self) {
        'restart: loop {
            for i in (0..self.levels.len()).rev() {
                let level = &self.levels[i];
                let orbit = level.orbit().to_vec();
                let gens: Vec<Arc<Permutation>> = level.generators().to_vec();
                for &p in &orbit {
                    let up = self.levels[i].transversal(p).expect("orbit point");
                    for s in &gens {
                        let q = s.image(p);
                        let x = up.then(s);
                        let y = self.levels[i].strip(&x, q);
                        if y.is_identity() {
                            continue;
                        }
                        let (h, j) = self.sift_from(&y, i + 1);
                        if !h.is_identity() {
                            self.add(h, j);
                            continue 'restart;
                        }
                    }
                }
            }
            return;
        }
    }

    fn finish(self) -> StabChain {
        StabChain {
            degree: self.degree,
            levels: self.levels.into_iter().map(Arc::new).collect(),
        }
    }
}

/// Builds a stabilizer chain by random Schreier–Sims.
///
/// With a known order the random phase stops once the orbit lengths
/// multiply to it, which certifies the chain. Without one, a deterministic
/// Schreier-generator check follows. `from`, if given, is a chain for the
/// same group used as a source of uniform random elements.
pub fn build_chain(
    degree: usize,
    gens: &[Permutation],
    opts: &ChainOptions,
    from: Option<&StabChain>,
) -> Result<StabChain> {
    for g in gens {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
    }
    for &b in &opts.prefix {
        if b as usize >= degree {
            return Err(Error::PointOutOfRange {
                point: b as usize,
                degree,
            });
        }
    }
    let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    let mut b = Builder::new(degree, &opts.prefix);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.unwrap_or(DEFAULT_SEED));

    for g in &gens {
        b.absorb(g);
    }
    if gens.is_empty() {
        if let Some(k) = &opts.known_order {
            if !k.is_one() {
                return Err(Error::Internal(format!(
                    "trivial group claimed to have order {k}"
                )));
            }
        }
        return Ok(b.finish());
    }

    let mut source = match from {
        Some(c) if !c.is_trivial() => Source::Chain(c),
        Some(_) => Source::Trivial,
        None => {
            let mut slots: Vec<Permutation> = Vec::new();
            while slots.len() < 10.max(gens.len()) {
                slots.push(gens[slots.len() % gens.len()].clone());
            }
            let mut s = Source::Replacement {
                slots,
                acc: Permutation::identity(degree),
            };
            for _ in 0..40 {
                s.next(&mut rng);
            }
            s
        }
    };

    match &opts.known_order {
        Some(target) => {
            let mut stall = 0;
            while &b.order() < target {
                let Some(r) = source.next(&mut rng) else { break };
                if b.absorb(&r) {
                    stall = 0;
                } else {
                    stall += 1;
                    if stall > STALL_LIMIT {
                        return Err(Error::Internal(format!(
                            "group order stuck at {} below the claimed {target}",
                            b.order()
                        )));
                    }
                }
            }
            for _ in 0..CONFIRM_SIFTS {
                let Some(r) = source.next(&mut rng) else { break };
                if b.absorb(&r) {
                    break;
                }
            }
            let got = b.order();
            if &got != target {
                return Err(Error::Internal(format!(
                    "group order {got} differs from the claimed {target}"
                )));
            }
        }
        None => {
            let mut quiet = 0;
            while quiet < QUIET_SIFTS {
                let Some(r) = source.next(&mut rng) else { break };
                if b.absorb(&r) {
                    quiet = 0;
                } else {
                    quiet += 1;
                }
            }
            b.verify();
        }
    }
    Ok(b.finish())
}

#[cfg(test)]
pub(crate) fn deterministic_chain(degree: usize, gens: &[Permutation]) -> StabChain {
    let mut b = Builder::new(degree, &[]);
    for g in gens {
        b.absorb(g);
    }
    b.verify();
    b.finish()
}
