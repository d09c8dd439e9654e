use num_bigint::BigUint;
use serde::Serialize;

use crate::base::{base_size_exact, reg_l_m, regular_orbits, regular_suborbits, BaseMethod};
use crate::constructions::ProductTypeGroup;
use crate::distinguishing::{check_dagger, check_ddagger, distinguishing_number};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralCheck {
    pub name: &'static str,
    /// Whether the hypotheses of the implication are met.
    pub applicable: bool,
    /// Whether the conclusion holds; `None` when not applicable or unknown.
    pub holds: Option<bool>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    pub b_g: Option<usize>,
    pub b_l: usize,
    pub r_l: usize,
    pub r_t: usize,
    #[serde(rename = "D")]
    pub d: usize,
    pub index_l_t: usize,
    pub tau: Option<usize>,
    pub full_wreath: bool,
    pub between: bool,
    pub checks: Vec<StructuralCheck>,
}

impl StructuralReport {
    /// No applicable implication was contradicted.
    pub fn consistent(&self) -> bool {
        self.checks.iter().all(|c| c.holds != Some(false))
    }
}

fn check(name: &'static str, applicable: bool, holds: Option<bool>, detail: String) -> StructuralCheck {
    StructuralCheck {
        name,
        applicable,
        holds: if applicable { holds } else { None },
        detail,
    }
}

/// Instantiates the structural implications relating `b(G)` to data of
/// `L`, `T` and `P`, checking each against a directly computed `b(G)`.
pub fn structural_checks(g: &ProductTypeGroup, node_budget: u64) -> Result<StructuralReport> {
    let k = g.k();
    let index = g.index_l_t();
    let full_tuples = BigUint::from(index).pow(k as u32);
    let image = BigUint::from(g.quotient_image.len());
    let full_wreath = image == full_tuples;
    let between = index > 1 && g.quotient_image.len() > 1 && !full_wreath;
    let r_l = regular_suborbits(&g.l)?.count;
    let r_t = regular_orbits(&g.t.point_stabilizer(0)?).count;
    let b_l = base_size_exact(&g.l, node_budget)?.b;
    let d = distinguishing_number(&g.p)?;
    let b_g = match base_size_exact(&g.group, node_budget) {
        Ok(r) if r.method == BaseMethod::Exact => Some(r.b),
        Ok(_) => None,
        Err(e) if e.is_budget() => None,
        Err(e) => return Err(e),
    };
    let tau0 = g.tau == Some(0);
    let mut checks = Vec::new();

    let reg_b = reg_l_m(&g.l, b_l)?;
    checks.push(check(
        "wreath-dichotomy",
        full_wreath && b_g.is_some(),
        b_g.map(|b| {
            if reg_b >= d as u64 {
                b == b_l
            } else {
                b == b_l + 1
            }
        }),
        format!("reg(L, b(L)) = {reg_b}, D(P) = {d}, b(L) = {b_l}, b(G) = {b_g:?}"),
    ));

    let ge3 = b_g.map(|b| b >= 3);
    let base = between && b_l == 2 && tau0;
    checks.push(check(
        "index-bounds",
        base && ge3 == Some(true),
        Some(index <= r_t && r_t + 2 <= index + d),
        format!("|L:T| = {index}, r(T) = {r_t}, D(P) = {d}"),
    ));

    let dagger = if base && ge3 == Some(true) {
        let top = k.min(r_t);
        let mut ok = Some(true);
        for m in d..=top {
            match check_dagger(&g.p, m) {
                Ok(true) => {}
                Ok(false) => ok = Some(false),
                Err(e) if e.is_budget() => ok = None,
                Err(e) => return Err(e),
            }
        }
        ok
    } else {
        None
    };
    checks.push(check(
        "dagger",
        base && ge3 == Some(true) && dagger.is_some(),
        dagger,
        format!("D(P) <= m <= min(k, r(T)) = {}", k.min(r_t)),
    ));

    let ddagger = if base && d == 2 && ge3 == Some(true) {
        match check_ddagger(&g.p) {
            Ok(v) => Some(v),
            Err(e) if e.is_budget() => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    checks.push(check(
        "ddagger",
        base && d == 2 && ge3 == Some(true) && ddagger.is_some(),
        ddagger,
        "subsets with trivial stabilizer map to their complements".into(),
    ));

    let p_symmetric = g.p.order() == (1..=k).map(BigUint::from).product::<BigUint>();
    checks.push(check(
        "index-two-symmetric",
        base && index == 2 && p_symmetric && k == r_t && b_g.is_some(),
        ge3,
        format!("P = S_k with k = r(T) = {r_t}"),
    ));

    checks.push(check(
        "index-two-large-base",
        between && b_l >= 3 && index == 2 && b_g.is_some(),
        ge3,
        format!("b(L) = {b_l}, |L:T| = 2"),
    ));

    Ok(StructuralReport {
        b_g,
        b_l,
        r_l,
        r_t,
        d,
        index_l_t: index,
        tau: g.tau,
        full_wreath,
        between,
        checks,
    })
}
