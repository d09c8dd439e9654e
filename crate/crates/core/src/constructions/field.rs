use crate::error::{Error, Result};

/// Lower coefficients `c_0..c_{f-1}` of the monic defining polynomial
/// `x^f + c_{f-1} x^{f-1} + ... + c_0` for each non-prime field. In every
/// case `x` is primitive.
const POLYNOMIALS: &[(u32, &[u32])] = &[
    (4, &[1, 1]),
    (8, &[1, 1, 0]),
    (16, &[1, 1, 0, 0]),
    (32, &[1, 0, 1, 0, 0]),
    (64, &[1, 1, 0, 1, 1, 0]),
    (128, &[1, 1, 0, 0, 0, 0, 0]),
    (9, &[2, 2]),
    (27, &[1, 2, 0]),
    (81, &[2, 0, 0, 2]),
    (25, &[2, 4]),
    (125, &[3, 3, 0]),
    (49, &[3, 6]),
    (121, &[2, 7]),
];

pub const MAX_FIELD: u32 = 128;

/// The finite field of order `q <= 128`, with elements coded `0..q`.
///
/// The code of `a_0 + a_1 x + ...` is `a_0 + a_1 p + ...`; 0 and 1 are the
/// field's zero and one.
#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    f: u32,
    q: u32,
    add: Vec<u32>,
    neg: Vec<u32>,
    log: Vec<u32>,
    exp: Vec<u32>,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Splits `q` as `p^f`, if it is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    if !is_prime(p) {
        return None;
    }
    let mut r = q;
    let mut f = 0;
    while r % p == 0 {
        r /= p;
        f += 1;
    }
    (r == 1).then_some((p, f))
}

impl Field {
    pub fn new(q: u32) -> Result<Field> {
        let (p, f) = prime_power(q).ok_or(Error::UnsupportedField(q))?;
        if q > MAX_FIELD {
            return Err(Error::UnsupportedField(q));
        }
        let digits = |mut c: u32| -> Vec<u32> {
            (0..f)
                .map(|_| {
                    let d = c % p;
                    c /= p;
                    d
                })
                .collect()
        };
        let undigits = |v: &[u32]| v.iter().rev().fold(0, |acc, &d| acc * p + d);
        let qs = q as usize;
        let mut add = vec![0u32; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&s);
            }
        }
        let neg = (0..q)
            .map(|a| undigits(&digits(a).iter().map(|x| (p - x) % p).collect::<Vec<_>>()))
            .collect();

        let mut exp = Vec::with_capacity(qs - 1);
        if f == 1 {
            let g = (1..p)
                .find(|&g| {
                    let mut x = 1u32;
                    (1..p - 1).all(|_| {
                        x = x * g % p;
                        x != 1
                    })
                })
                .expect("prime field has a primitive root");
            let mut x = 1u32;
            for _ in 0..q - 1 {
                exp.push(x);
                x = x * g % p;
            }
        } else {
            let coeffs = POLYNOMIALS
                .iter()
                .find(|(qq, _)| *qq == q)
                .map(|(_, c)| *c)
                .ok_or(Error::UnsupportedField(q))?;
            let mut v = vec![0u32; f as usize];
            v[0] = 1;
            for _ in 0..q - 1 {
                exp.push(undigits(&v));
                let top = v[f as usize - 1];
                let mut next = vec![0u32; f as usize];
                for i in 0..f as usize {
                    let prev = if i == 0 { 0 } else { v[i - 1] };
                    next[i] = (prev + p * p - top * coeffs[i] % p) % p;
                }
                v = next;
            }
        }
        let mut log = vec![u32::MAX; qs];
        for (i, &x) in exp.iter().enumerate() {
            if log[x as usize] != u32::MAX {
                return Err(Error::Internal(format!(
                    "defining polynomial for GF({q}) is not primitive"
                )));
            }
            log[x as usize] = i as u32;
        }
        Ok(Field {
            p,
            f,
            q,
            add,
            neg,
            log,
            exp,
        })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % n) as usize]
    }

    /// Panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        let n = self.q - 1;
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    /// The fixed primitive element.
    pub fn primitive(&self) -> u32 {
        self.exp[1 % self.exp.len()]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }

    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.p == 2 || self.log[a as usize] % 2 == 0
    }
}
