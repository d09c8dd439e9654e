use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::base::{reg_l_m, regular_suborbits};
use crate::distinguishing::{count_tm, distinguishing_number};
use crate::error::{Error, Result};
use crate::perm::PermutationGroup;

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn factorial(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// `(1/|P|) Σ_{m=D}^{k} m! C(r, m) t_m`, failing unless the sum is divisible
/// by `|P|`.
pub fn r_wreath_formula(
    r_l: u64,
    p_order: &BigUint,
    d: usize,
    k: usize,
    tm: &BTreeMap<usize, u64>,
) -> Result<BigUint> {
    let mut sum = BigUint::zero();
    for m in d..=k.min(r_l as usize) {
        let t = tm.get(&m).ok_or_else(|| {
            Error::InvalidParameters(format!("t_{m} is needed but was not supplied"))
        })?;
        sum += factorial(m as u64) * binomial(r_l, m as u64) * BigUint::from(*t);
    }
    let (q, rem) = sum.div_rem(p_order);
    if !rem.is_zero() {
        return Err(Error::Internal(format!(
            "regular suborbit sum {sum} is not divisible by |P| = {p_order}"
        )));
    }
    Ok(q)
}

/// `C(r, k)`, the value for `P = S_k`.
pub fn r_wreath_symmetric(r_l: u64, k: usize) -> BigUint {
    binomial(r_l, k as u64)
}

/// `(r^k - r)/k`, the value for `P = C_k` with `k` prime.
pub fn r_wreath_cyclic_prime(r_l: u64, k: usize) -> BigUint {
    let r = BigUint::from(r_l);
    (r.pow(k as u32) - &r) / BigUint::from(k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BcVerdict {
    pub m: usize,
    pub reg: u64,
    pub at_most_m: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BcPrediction {
    #[serde(rename = "D")]
    pub d: usize,
    pub verdicts: Vec<BcVerdict>,
    /// Least `m <= m_max` with `reg(L, m) >= D(P)`.
    pub predicted_b: Option<usize>,
}

/// Predicts `b(L ≀ P)` as the least `m` with `reg(L, m) >= D(P)`.
pub fn bc_predict(l: &PermutationGroup, p: &PermutationGroup, m_max: usize) -> Result<BcPrediction> {
    let d = distinguishing_number(p)?;
    let mut verdicts = Vec::new();
    let mut predicted_b = None;
    for m in 1..=m_max {
        let reg = reg_l_m(l, m)?;
        let ok = reg >= d as u64;
        verdicts.push(BcVerdict {
            m,
            reg,
            at_most_m: ok,
        });
        if ok {
            predicted_b = Some(m);
            break;
        }
    }
    Ok(BcPrediction {
        d,
        verdicts,
        predicted_b,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WreathAnalysis {
    pub r_l: u64,
    pub b_l: usize,
    pub reg_l: BTreeMap<usize, u64>,
    #[serde(rename = "D")]
    pub d: usize,
    pub tm: BTreeMap<usize, u64>,
    pub predicted_b: Option<usize>,
    pub r_wreath: u64,
}

/// Everything the product-action formulas need about `L` and `P`.
pub fn analyze_wreath(l: &PermutationGroup, p: &PermutationGroup, m_max: usize) -> Result<WreathAnalysis> {
    let k = p.degree();
    let r_l = regular_suborbits(l)?.count as u64;
    let d = distinguishing_number(p)?;
    let mut reg_l = BTreeMap::new();
    let mut b_l = None;
    let mut predicted_b = None;
    for m in 1..=m_max {
        let reg = reg_l_m(l, m)?;
        reg_l.insert(m, reg);
        if b_l.is_none() && reg >= 1 {
            b_l = Some(m);
        }
        if predicted_b.is_none() && reg >= d as u64 {
            predicted_b = Some(m);
        }
        if predicted_b.is_some() {
            break;
        }
    }
    let b_l = match b_l {
        Some(b) => b,
        None => crate::base::base_size_exact(l, crate::base::DEFAULT_NODE_BUDGET)?.b,
    };
    let mut tm = BTreeMap::new();
    for m in d..=k.min(r_l as usize) {
        tm.insert(m, count_tm(p, m)?);
    }
    let r_wreath = r_wreath_formula(r_l, &p.order(), d, k, &tm)?
        .to_u64()
        .ok_or_else(|| Error::Internal("regular suborbit count overflows".into()))?;
    Ok(WreathAnalysis {
        r_l,
        b_l,
        reg_l,
        d,
        tm,
        predicted_b,
        r_wreath,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrimitiveCase {
    Symmetric,
    A5Degree6,
    PGammaL28Degree9,
    AGL32Degree8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniquenessReport {
    pub unique: bool,
    pub r_l: u64,
    #[serde(rename = "D")]
    pub d: usize,
    pub t_d: u64,
    pub reason: String,
    /// For primitive `P`: the matching case of the classification, if any.
    pub primitive_case: Option<PrimitiveCase>,
    pub p_primitive: bool,
}

fn classify_primitive(k: usize, order: &BigUint, d: usize) -> Option<PrimitiveCase> {
    let order = order.to_u64()?;
    if BigUint::from(order) == factorial(k as u64) && d == k {
        Some(PrimitiveCase::Symmetric)
    } else if (k, order, d) == (6, 60, 3) {
        Some(PrimitiveCase::A5Degree6)
    } else if (k, order, d) == (9, 1512, 3) {
        Some(PrimitiveCase::PGammaL28Degree9)
    } else if (k, order, d) == (8, 1344, 4) {
        Some(PrimitiveCase::AGL32Degree8)
    } else {
        None
    }
}

/// Whether `L ≀ P` has exactly one regular suborbit.
pub fn unique_regular_suborbit_test(l: &PermutationGroup, p: &PermutationGroup) -> Result<UniquenessReport> {
    let r_l = regular_suborbits(l)?.count as u64;
    let d = distinguishing_number(p)?;
    let t_d = count_tm(p, d)?;
    let order = p.order();
    let tight = BigUint::from(t_d) * factorial(d as u64) == order;
    let unique = r_l == d as u64 && tight;
    let reason = if r_l != d as u64 {
        format!("r(L) = {r_l} differs from D(P) = {d}")
    } else if !tight {
        format!("t_{d} = {t_d} exceeds |P|/{d}! = {}", order.clone() / factorial(d as u64))
    } else {
        format!("r(L) = D(P) = {d} and t_{d} = |P|/{d}!")
    };
    let p_primitive = p.degree() > 1 && crate::perm::is_primitive(p)?;
    let primitive_case = if p_primitive {
        classify_primitive(p.degree(), &order, d)
    } else {
        None
    };
    Ok(UniquenessReport {
        unique,
        r_l,
        d,
        t_d,
        reason,
        primitive_case,
        p_primitive,
    })
}
