use num_bigint::BigUint;
use num_traits::One;

use super::field::{prime_power, Field};
use super::Fixture;
use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationGroup};

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

fn cycle(n: usize, points: &[u32]) -> Result<Permutation> {
    Permutation::from_cycles(n, &[points])
}

pub fn symmetric(n: usize) -> Result<Fixture> {
    if n == 0 {
        return Err(Error::InvalidParameters("symmetric group needs n >= 1".into()));
    }
    let all: Vec<u32> = (0..n as u32).collect();
    let gens = if n == 1 {
        vec![]
    } else {
        vec![cycle(n, &[0, 1])?, cycle(n, &all)?]
    };
    let group = PermutationGroup::new(n, gens)?.with_known_order(factorial(n));
    let (socle, outer) = if n >= 5 {
        (Some(alternating(n)?.group), vec![cycle(n, &[0, 1])?])
    } else {
        (None, vec![])
    };
    Ok(Fixture {
        name: format!("s:{n}"),
        group,
        socle,
        outer,
    })
}

pub fn alternating(n: usize) -> Result<Fixture> {
    if n < 3 {
        return Err(Error::InvalidParameters("alternating group needs n >= 3".into()));
    }
    let mut gens = vec![cycle(n, &[0, 1, 2])?];
    if n > 3 {
        let long: Vec<u32> = if n % 2 == 1 {
            (0..n as u32).collect()
        } else {
            (1..n as u32).collect()
        };
        gens.push(cycle(n, &long)?);
    }
    let group = PermutationGroup::new(n, gens)?.with_known_order(factorial(n) / 2u32);
    let socle = (n >= 5).then(|| group.clone());
    Ok(Fixture {
        name: format!("a:{n}"),
        group,
        socle,
        outer: vec![],
    })
}

pub fn cyclic(n: usize) -> Result<Fixture> {
    if n == 0 {
        return Err(Error::InvalidParameters("cyclic group needs n >= 1".into()));
    }
    let all: Vec<u32> = (0..n as u32).collect();
    let group = PermutationGroup::new(n, vec![cycle(n, &all)?])?.with_known_order(BigUint::from(n));
    Ok(Fixture::plain(format!("c:{n}"), group))
}

pub fn dihedral(n: usize) -> Result<Fixture> {
    if n < 3 {
        return Err(Error::InvalidParameters("dihedral group needs n >= 3".into()));
    }
    let all: Vec<u32> = (0..n as u32).collect();
    let flip = Permutation::from_images((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect())?;
    let group = PermutationGroup::new(n, vec![cycle(n, &all)?, flip])?
        .with_known_order(BigUint::from(2 * n));
    Ok(Fixture::plain(format!("d:{n}"), group))
}

fn gl_order(d: u32, p: u32) -> BigUint {
    let q = BigUint::from(p).pow(d);
    (0..d).fold(BigUint::one(), |acc, i| {
        acc * (&q - BigUint::from(p).pow(i))
    })
}

/// Acts on vectors of `GF(p)^d` coded base `p` with coordinate 0 least
/// significant.
fn affine_map(d: u32, p: u32, matrix: &[Vec<u32>], shift: &[u32]) -> Permutation {
    let n = p.pow(d);
    let images = (0..n)
        .map(|code| {
            let mut v = Vec::with_capacity(d as usize);
            let mut c = code;
            for _ in 0..d {
                v.push(c % p);
                c /= p;
            }
            let w: Vec<u32> = (0..d as usize)
                .map(|j| {
                    let s: u32 = (0..d as usize).map(|i| v[i] * matrix[i][j]).sum();
                    (s + shift[j]) % p
                })
                .collect();
            w.iter().rev().fold(0, |acc, &x| acc * p + x)
        })
        .collect();
    Permutation::from_images(images).expect("invertible affine map")
}

/// AGL(d, p) on `p^d` points.
pub fn affine_gl(d: u32, p: u32) -> Result<Fixture> {
    if d == 0 || prime_power(p) != Some((p, 1)) {
        return Err(Error::InvalidParameters(format!("agl:{d}:{p}")));
    }
    let n = p.checked_pow(d).filter(|&n| n <= 1 << 20).ok_or_else(|| {
        Error::InvalidParameters(format!("agl:{d}:{p} is too large"))
    })?;
    let du = d as usize;
    let ident = |_: ()| -> Vec<Vec<u32>> {
        (0..du)
            .map(|i| (0..du).map(|j| u32::from(i == j)).collect())
            .collect()
    };
    let zero = vec![0u32; du];
    let mut gens = Vec::new();
    let mut e0 = zero.clone();
    e0[0] = 1;
    gens.push(affine_map(d, p, &ident(()), &e0));
    for i in 0..du {
        for j in 0..du {
            if i != j {
                let mut m = ident(());
                m[i][j] = 1;
                gens.push(affine_map(d, p, &m, &zero));
            }
        }
    }
    if p > 2 {
        let w = Field::new(p)?.primitive();
        let mut m = ident(());
        m[0][0] = w;
        gens.push(affine_map(d, p, &m, &zero));
    }
    let order = BigUint::from(n) * gl_order(d, p);
    let group = PermutationGroup::new(n as usize, gens)?.with_known_order(order);
    Ok(Fixture::plain(format!("agl:{d}:{p}"), group))
}

/// AΓL(1, q) on the field elements.
pub fn affine_gamma_l1(q: u32) -> Result<Fixture> {
    let k = Field::new(q)?;
    let n = q as usize;
    let map = |f: &dyn Fn(u32) -> u32| {
        Permutation::from_images((0..q).map(f).collect()).expect("field bijection")
    };
    let w = k.primitive();
    let gens = vec![
        map(&|z| k.add(z, 1)),
        map(&|z| k.mul(z, w)),
        map(&|z| k.frobenius(z)),
    ];
    let order = BigUint::from(q as u64 * (q as u64 - 1) * k.degree() as u64);
    let group = PermutationGroup::new(n, gens)?.with_known_order(order);
    Ok(Fixture::plain(format!("agaml1:{q}"), group))
}

/// Affine maps `x -> ax + b` of Z/8 with `a` odd.
pub fn holomorph_c8() -> Result<Fixture> {
    let map = |f: &dyn Fn(u32) -> u32| {
        Permutation::from_images((0..8).map(f).collect()).expect("unit affine map")
    };
    let gens = vec![
        map(&|x| (x + 1) % 8),
        map(&|x| (3 * x) % 8),
        map(&|x| (5 * x) % 8),
    ];
    let group = PermutationGroup::new(8, gens)?.with_known_order(BigUint::from(32u32));
    Ok(Fixture::plain("hol:c8".into(), group))
}

/// Minus-type form `x0 x1 + x2^2 + x2 x3 + x3^2` on `GF(2)^4`.
fn minus_form(x: u32) -> u32 {
    let b = |i: u32| (x >> i) & 1;
    (b(0) * b(1) + b(2) + b(2) * b(3) + b(3)) & 1
}

/// Image of the bit vector `x` under the 4x4 binary matrix whose row `i`
/// is the nibble `(m >> 4i) & 15`.
fn apply_binary(m: u32, x: u32) -> u32 {
    (0..4).fold(0, |acc, i| {
        if (x >> i) & 1 == 1 {
            acc ^ ((m >> (4 * i)) & 15)
        } else {
            acc
        }
    })
}

/// Isometry group of the minus-type form, with the translations, on 16
/// vectors.
pub fn affine_o4_minus_2() -> Result<Fixture> {
    let isometries: Vec<Permutation> = (0u32..1 << 16)
        .filter_map(|m| {
            let images: Vec<u32> = (0..16).map(|x| apply_binary(m, x)).collect();
            let preserves = (0..16).all(|x| minus_form(images[x as usize]) == minus_form(x));
            if !preserves {
                return None;
            }
            Permutation::from_images(images).ok()
        })
        .collect();
    if isometries.len() != 120 {
        return Err(Error::Internal(format!(
            "found {} isometries of the minus-type form",
            isometries.len()
        )));
    }
    let linear = PermutationGroup::generated_by(16, &isometries)?;
    let mut gens = linear.generators().to_vec();
    for i in 0..4 {
        let t = Permutation::from_images((0..16).map(|x| x ^ (1 << i)).collect())?;
        gens.push(t);
    }
    let group = PermutationGroup::new(16, gens)?.with_known_order(BigUint::from(1920u32));
    group.try_chain()?;
    Ok(Fixture::plain("o4minus2".into(), group))
}
