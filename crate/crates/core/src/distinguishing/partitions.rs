use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use serde::Serialize;

use super::{apply_mask, bounds_check, Checker, MAX_PARTITION_K, MAX_SUBSET_K};
use crate::error::{Error, Result};
use crate::par;
use crate::perm::PermutationGroup;

/// Leaf budget for partition searches beyond the exact enumeration range.
const SEARCH_BUDGET: u64 = 10_000_000;
const ORDERED_COLORING_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SetPartition {
    k: usize,
    blocks: Vec<Vec<u32>>,
}

impl SetPartition {
    /// Validates and sorts the blocks by least element.
    pub fn new(k: usize, blocks: Vec<Vec<u32>>) -> Result<Self> {
        let mut seen = vec![false; k];
        let mut blocks: Vec<Vec<u32>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidParameters("empty block".into()));
            }
            for &x in b {
                if x as usize >= k || seen[x as usize] {
                    return Err(Error::InvalidParameters(format!(
                        "point {x} is out of range or repeated"
                    )));
                }
                seen[x as usize] = true;
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::InvalidParameters("blocks do not cover the ground set".into()));
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(SetPartition { k, blocks })
    }

    /// Partition whose blocks are the color classes.
    pub fn from_colors(colors: &[u32]) -> Self {
        let mut map: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for (i, &c) in colors.iter().enumerate() {
            map.entry(c).or_default().push(i as u32);
        }
        let mut blocks: Vec<Vec<u32>> = map.into_values().collect();
        blocks.sort_by_key(|b| b[0]);
        SetPartition {
            k: colors.len(),
            blocks,
        }
    }

    /// Block index of each point.
    pub fn colors(&self) -> Vec<u32> {
        let mut c = vec![0u32; self.k];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                c[x as usize] = i as u32;
            }
        }
        c
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            let s: Vec<String> = b.iter().map(u32::to_string).collect();
            write!(f, "{{{}}}", s.join(","))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistinguishingProfile {
    #[serde(rename = "D")]
    pub d: usize,
    pub t: BTreeMap<usize, u64>,
    pub bounds_ok: bool,
    pub witness: Option<SetPartition>,
}

/// Whether the only element fixing every block of `partition` is the identity.
pub fn is_distinguishing(p: &PermutationGroup, partition: &SetPartition) -> Result<bool> {
    if partition.k() != p.degree() {
        return Err(Error::DegreeMismatch(partition.k(), p.degree()));
    }
    crate::perm::coloring_stabilizer_is_trivial(p, &partition.colors())
}

/// Restricted growth strings of length `k` with exactly `m` values.
struct Rgs {
    k: usize,
    m: u32,
}

impl Rgs {
    fn prefixes(&self, depth: usize) -> Vec<(Vec<u32>, u32)> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.collect_prefixes(depth.min(self.k), &mut cur, 0, &mut out);
        out
    }

    fn collect_prefixes(&self, depth: usize, cur: &mut Vec<u32>, used: u32, out: &mut Vec<(Vec<u32>, u32)>) {
        if cur.len() == depth {
            if used as usize + (self.k - depth) >= self.m as usize {
                out.push((cur.clone(), used));
            }
            return;
        }
        for c in 0..(used + 1).min(self.m) {
            cur.push(c);
            self.collect_prefixes(depth, cur, used.max(c + 1), out);
            cur.pop();
        }
    }

    /// Visits every completion of `cur`; stops when `visit` returns false.
    fn walk<F>(&self, cur: &mut Vec<u32>, used: u32, visit: &mut F) -> Result<bool>
    where
        F: FnMut(&[u32]) -> Result<bool>,
    {
        if cur.len() == self.k {
            return if used == self.m { visit(cur) } else { Ok(true) };
        }
        if used as usize + (self.k - cur.len()) < self.m as usize {
            return Ok(true);
        }
        for c in 0..(used + 1).min(self.m) {
            cur.push(c);
            let go = self.walk(cur, used.max(c + 1), visit)?;
            cur.pop();
            if !go {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

const PREFIX_DEPTH: usize = 6;

fn sum_over_partitions<F>(k: usize, m: usize, f: F) -> Result<u64>
where
    F: Fn(&[u32]) -> Result<bool> + Sync + Send,
{
    let rgs = Rgs { k, m: m as u32 };
    let prefixes = rgs.prefixes(PREFIX_DEPTH);
    let counts = par::map(&prefixes, |(prefix, used)| {
        let mut cur = prefix.clone();
        let mut n = 0u64;
        rgs.walk(&mut cur, *used, &mut |c| {
            if f(c)? {
                n += 1;
            }
            Ok(true)
        })?;
        Ok(n)
    });
    counts.into_iter().sum()
}

fn check_range(k: usize) -> Result<()> {
    if k > MAX_PARTITION_K {
        Err(Error::BudgetExhausted(format!(
            "partition enumeration needs k <= {MAX_PARTITION_K}, got {k}"
        )))
    } else {
        Ok(())
    }
}

fn t2_by_subsets(checker: &Checker) -> Result<u64> {
    let k = checker.k;
    if k < 2 {
        return Ok(0);
    }
    let half = 1u64 << (k - 1);
    let full = (1u64 << k) - 1;
    // Subsets containing point k-1 represent each 2-partition once.
    let counts = par::map_range(half as usize, |i| {
        let mask = (i as u64 | half) as u32;
        if mask as u64 == full {
            return Ok(0u64);
        }
        checker.mask_is_trivial(mask).map(u64::from)
    });
    counts.into_iter().sum()
}

fn order_exceeds_subsets(p: &PermutationGroup) -> bool {
    p.order() > BigUint::from(1u64) << p.degree()
}

/// `t_m`: distinguishing partitions with exactly `m` non-empty blocks.
pub fn count_tm(p: &PermutationGroup, m: usize) -> Result<u64> {
    let k = p.degree();
    if m == 0 || m > k {
        return Ok(0);
    }
    if m == 1 {
        return Ok(u64::from(p.is_trivial()));
    }
    let checker = Checker::new(p)?;
    if m == 2 && k <= MAX_SUBSET_K {
        if order_exceeds_subsets(p) {
            return Ok(0);
        }
        return t2_by_subsets(&checker);
    }
    check_range(k)?;
    let fact: BigUint = (1..=m).map(BigUint::from).product();
    if p.order() > crate::distinguishing::stirling2(k, m) * fact {
        return Ok(0);
    }
    sum_over_partitions(k, m, |c| checker.coloring_is_trivial(c))
}

/// All distinguishing partitions with exactly `m` blocks, in RGS order.
pub fn distinguishing_partitions(p: &PermutationGroup, m: usize) -> Result<Vec<SetPartition>> {
    let k = p.degree();
    check_range(k)?;
    if m == 0 || m > k {
        return Ok(Vec::new());
    }
    let checker = Checker::new(p)?;
    let rgs = Rgs { k, m: m as u32 };
    let prefixes = rgs.prefixes(PREFIX_DEPTH);
    let parts = par::map(&prefixes, |(prefix, used)| {
        let mut cur = prefix.clone();
        let mut out = Vec::new();
        rgs.walk(&mut cur, *used, &mut |c| {
            if checker.coloring_is_trivial(c)? {
                out.push(SetPartition::from_colors(c));
            }
            Ok(true)
        })?;
        Ok::<_, Error>(out)
    });
    let mut all = Vec::new();
    for part in parts {
        all.extend(part?);
    }
    Ok(all)
}

/// A distinguishing partition with exactly `m` blocks, least in RGS order.
pub fn find_distinguishing(p: &PermutationGroup, m: usize) -> Result<Option<SetPartition>> {
    let k = p.degree();
    if m == 0 || m > k {
        return Ok(None);
    }
    let checker = Checker::new(p)?;
    let rgs = Rgs { k, m: m as u32 };
    let prefixes = rgs.prefixes(PREFIX_DEPTH);
    let leaves = AtomicU64::new(0);
    let found = par::find_first(&prefixes, |(prefix, used)| {
        let mut cur = prefix.clone();
        let mut hit: Option<Result<Vec<u32>>> = None;
        let r = rgs.walk(&mut cur, *used, &mut |c| {
            if k > MAX_PARTITION_K && leaves.fetch_add(1, Ordering::Relaxed) >= SEARCH_BUDGET {
                return Err(Error::BudgetExhausted("partition search".into()));
            }
            if checker.coloring_is_trivial(c)? {
                hit = Some(Ok(c.to_vec()));
                return Ok(false);
            }
            Ok(true)
        });
        match r {
            Err(e) => Some(Err(e)),
            Ok(_) => hit,
        }
    });
    found
        .transpose()
        .map(|o| o.map(|c| SetPartition::from_colors(&c)))
}

/// `D(P)` together with a witness partition.
fn distinguishing_with_witness(p: &PermutationGroup) -> Result<(usize, SetPartition)> {
    let k = p.degree();
    if p.is_trivial() {
        return Ok((1, SetPartition::from_colors(&vec![0; k])));
    }
    for m in 2..=k {
        let fact: BigUint = (1..=m).map(BigUint::from).product();
        if p.order() > crate::distinguishing::stirling2(k, m) * fact {
            continue;
        }
        if m == 2 && k <= MAX_SUBSET_K {
            let checker = Checker::new(p)?;
            let half = 1u32 << (k - 1);
            let hit = par::find_first(&(0..half).collect::<Vec<u32>>(), |&i| {
                let mask = i | half;
                match checker.mask_is_trivial(mask) {
                    Ok(true) if mask != (half << 1).wrapping_sub(1) => Some(Ok(mask)),
                    Ok(_) => None,
                    Err(e) => Some(Err(e)),
                }
            });
            if let Some(mask) = hit.transpose()? {
                let colors: Vec<u32> = (0..k).map(|i| (mask >> i) & 1).collect();
                return Ok((2, SetPartition::from_colors(&colors)));
            }
            continue;
        }
        if let Some(w) = find_distinguishing(p, m)? {
            return Ok((m, w));
        }
    }
    Err(Error::Internal("the partition into singletons always distinguishes".into()))
}

/// `D(P)`: least number of blocks in a distinguishing partition.
pub fn distinguishing_number(p: &PermutationGroup) -> Result<usize> {
    distinguishing_with_witness(p).map(|(d, _)| d)
}

/// Surjective colorings `[k] -> [m]` with trivial stabilizer.
pub fn count_ordered_colorings(p: &PermutationGroup, m: usize) -> Result<u64> {
    let k = p.degree();
    let total = (m as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
    if total > ORDERED_COLORING_BUDGET {
        return Err(Error::BudgetExhausted(format!("{m}^{k} colorings")));
    }
    if m == 0 {
        return Ok(0);
    }
    let checker = Checker::new(p)?;
    let counts = par::map_range(total as usize, |mut x| {
        let mut colors = vec![0u32; k];
        let mut hit = vec![false; m];
        for c in colors.iter_mut() {
            *c = (x % m) as u32;
            hit[*c as usize] = true;
            x /= m;
        }
        if hit.iter().all(|&h| h) {
            checker.coloring_is_trivial(&colors).map(u64::from)
        } else {
            Ok(0)
        }
    });
    counts.into_iter().sum()
}

/// Every block of every distinguishing `m`-partition is moved off itself by
/// some element.
pub fn check_dagger(p: &PermutationGroup, m: usize) -> Result<bool> {
    let k = p.degree();
    check_range(k)?;
    let checker = Checker::new(p)?;
    let elems = checker.elements()?;
    let rgs = Rgs { k, m: m as u32 };
    let prefixes = rgs.prefixes(PREFIX_DEPTH);
    let bad = par::find_first(&prefixes, |(prefix, used)| {
        let mut cache: HashMap<u32, bool> = HashMap::new();
        let mut cur = prefix.clone();
        let mut failed = false;
        let r = rgs.walk(&mut cur, *used, &mut |c| {
            if !checker.coloring_is_trivial(c)? {
                return Ok(true);
            }
            for b in 0..m as u32 {
                let mask = c
                    .iter()
                    .enumerate()
                    .filter(|&(_, &x)| x == b)
                    .fold(0u32, |acc, (i, _)| acc | 1 << i);
                let ok = *cache
                    .entry(mask)
                    .or_insert_with(|| elems.iter().any(|g| apply_mask(g, mask) & mask == 0));
                if !ok {
                    failed = true;
                    return Ok(false);
                }
            }
            Ok(true)
        });
        match r {
            Err(e) => Some(Err(e)),
            Ok(_) if failed => Some(Ok(())),
            Ok(_) => None,
        }
    });
    match bad {
        None => Ok(true),
        Some(Ok(())) => Ok(false),
        Some(Err(e)) => Err(e),
    }
}

/// `D(P)`, `t_m` for the requested `m` and the bounds check on each.
pub fn profile(p: &PermutationGroup, ms: &[usize]) -> Result<DistinguishingProfile> {
    let (d, witness) = distinguishing_with_witness(p)?;
    let order = p.order();
    let mut t = BTreeMap::new();
    let mut bounds_ok = true;
    for &m in ms {
        let tm = count_tm(p, m)?;
        bounds_ok &= bounds_check(&order, p.degree(), m, tm);
        t.insert(m, tm);
    }
    Ok(DistinguishingProfile {
        d,
        t,
        bounds_ok,
        witness: Some(witness),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{alternating, cyclic, symmetric};
    use crate::distinguishing::stirling2;

    #[test]
    fn small_partitions() {
        let s2 = symmetric(2).unwrap().group;
        let p = SetPartition::new(2, vec![vec![0], vec![1]]).unwrap();
        assert!(is_distinguishing(&s2, &p).unwrap());
        let s3 = symmetric(3).unwrap().group;
        let p = SetPartition::new(3, vec![vec![2, 1], vec![0]]).unwrap();
        assert_eq!(p.to_string(), "{0}{1,2}");
        assert!(!is_distinguishing(&s3, &p).unwrap());
        let c4 = cyclic(4).unwrap().group;
        let p = SetPartition::new(4, vec![vec![0], vec![1], vec![2, 3]]).unwrap();
        assert!(is_distinguishing(&c4, &p).unwrap());
        assert!(SetPartition::new(3, vec![vec![0], vec![0, 1, 2]]).is_err());
    }

    #[test]
    fn symmetric_and_alternating() {
        for n in 3..=7 {
            let s = symmetric(n).unwrap().group;
            assert_eq!(distinguishing_number(&s).unwrap(), n);
            assert_eq!(count_tm(&s, n).unwrap(), 1);
            let a = alternating(n).unwrap().group;
            assert_eq!(distinguishing_number(&a).unwrap(), n - 1);
            assert_eq!(count_tm(&a, n - 1).unwrap(), (n * (n - 1) / 2) as u64);
        }
    }

    #[test]
    fn cyclic_prime_matches_stirling() {
        let c = cyclic(5).unwrap().group;
        for m in 2..=5 {
            let t = count_tm(&c, m).unwrap();
            assert_eq!(BigUint::from(t), stirling2(5, m));
            let fact: u64 = (1..=m as u64).product();
            assert_eq!(count_ordered_colorings(&c, m).unwrap(), fact * t);
        }
    }

    #[test]
    fn dagger_small() {
        assert!(check_dagger(&symmetric(3).unwrap().group, 3).unwrap());
        assert!(check_dagger(&alternating(4).unwrap().group, 3).unwrap());
        assert!(!check_dagger(&cyclic(5).unwrap().group, 2).unwrap());
    }
}
