use serde::Serialize;

use crate::base::{regular_orbits, regular_suborbits};
use crate::constructions::ProductTypeGroup;
use crate::distinguishing::{distinguishing_number, distinguishing_partitions, SetPartition};
use crate::error::{Error, Result};
use crate::perm::PermutationGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Guaranteed,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Base2Certificate {
    pub verdict: Verdict,
    pub m_used: Option<usize>,
    pub witness: Option<(u32, u32)>,
    pub r_l: usize,
    pub r_t: usize,
    #[serde(rename = "D")]
    pub d: usize,
    pub tau: Option<usize>,
    pub reason: String,
}

/// Blocks by decreasing size, then least point.
fn ordered_blocks(p: &SetPartition) -> Vec<Vec<u32>> {
    let mut blocks = p.blocks().to_vec();
    blocks.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    blocks
}

/// Least `m` such that the first `m` ordered blocks cover more than `tau`
/// points.
fn leading_blocks(blocks: &[Vec<u32>], tau: Option<usize>) -> usize {
    let Some(tau) = tau else { return 1 };
    let mut covered = 0;
    for (i, b) in blocks.iter().enumerate() {
        covered += b.len();
        if covered > tau {
            return i + 1;
        }
    }
    blocks.len()
}

/// Sufficient condition for `b(G) = 2` with an explicit, verified witness.
pub fn sufficient_base2_general(g: &ProductTypeGroup) -> Result<Base2Certificate> {
    let k = g.k();
    let l0 = g.l.point_stabilizer(0)?;
    let t0 = g.t.point_stabilizer(0)?;
    let r_l = regular_suborbits(&g.l)?.count;
    let t_regular = regular_orbits(&t0);
    let r_t = t_regular.count;
    let d = distinguishing_number(&g.p)?;
    let index = g.index_l_t();
    let mut cert = Base2Certificate {
        verdict: Verdict::Unknown,
        m_used: None,
        witness: None,
        r_l,
        r_t,
        d,
        tau: g.tau,
        reason: String::new(),
    };
    let partitions = match distinguishing_partitions(&g.p, d) {
        Ok(ps) => ps,
        Err(e) if e.is_budget() => {
            cert.reason = "distinguishing partitions could not be enumerated".into();
            return Ok(cert);
        }
        Err(e) => return Err(e),
    };
    let best = partitions
        .iter()
        .map(|p| {
            let blocks = ordered_blocks(p);
            (leading_blocks(&blocks, g.tau), blocks)
        })
        .min_by_key(|(m, _)| *m);
    let Some((m, blocks)) = best else {
        cert.reason = "no distinguishing partition with the required union".into();
        return Ok(cert);
    };
    cert.m_used = Some(m);
    if r_l < m {
        cert.reason = format!("r(L) = {r_l} < m = {m}");
        return Ok(cert);
    }
    if r_t < m * (index - 1) + d {
        cert.reason = format!("r(T) = {r_t} < m(|L:T| - 1) + D(P) = {}", m * (index - 1) + d);
        return Ok(cert);
    }
    let l_part = l0.orbit_partition();
    let l_regular = regular_orbits(&l0).orbit_reps;
    let mut gammas: Vec<u32> = l_regular[..m].to_vec();
    let used: Vec<u32> = gammas.iter().map(|&x| l_part.rep_of(x)).collect();
    gammas.extend(
        t_regular
            .orbit_reps
            .iter()
            .copied()
            .filter(|&x| !used.contains(&l_part.rep_of(x)))
            .take(d - m),
    );
    if gammas.len() < d {
        return Err(Error::Internal("too few regular orbits for the witness".into()));
    }
    let mut beta = vec![0u32; k];
    for (gamma, block) in gammas.iter().zip(&blocks) {
        for &j in block {
            beta[j as usize] = *gamma;
        }
    }
    let beta = g.space.encode(&beta);
    if !g.group.pointwise_stabilizer(&[0, beta])?.is_trivial() {
        return Err(Error::Internal(format!(
            "constructed pair (0, {beta}) is not a base"
        )));
    }
    cert.verdict = Verdict::Guaranteed;
    cert.witness = Some((0, beta));
    cert.reason = format!("r(L) >= {m} and r(T) >= {}", m * (index - 1) + d);
    Ok(cert)
}

/// A base `{0, β}` for a transitive group, taking `β` as the least point of
/// the first regular orbit of the stabilizer of 0.
pub fn direct_base_two_witness(g: &PermutationGroup) -> Result<Option<(u32, u32)>> {
    let h = g.point_stabilizer(0)?;
    let reps = regular_orbits(&h).orbit_reps;
    match reps.first() {
        Some(&b) => {
            if !g.pointwise_stabilizer(&[0, b])?.is_trivial() {
                return Err(Error::Internal("regular orbit point is not a base".into()));
            }
            Ok(Some((0, b)))
        }
        None => Ok(None),
    }
}
