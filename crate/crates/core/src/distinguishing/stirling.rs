use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Stirling number of the second kind `S(k, m)`.
pub fn stirling2(k: usize, m: usize) -> BigUint {
    if m > k {
        return BigUint::zero();
    }
    let mut row = vec![BigUint::zero(); m + 1];
    row[0] = BigUint::one();
    for n in 1..=k {
        for j in (1..=m.min(n)).rev() {
            let prev = std::mem::take(&mut row[j]);
            row[j] = prev * BigUint::from(j) + &row[j - 1];
        }
        row[0] = BigUint::zero();
    }
    row[m].clone()
}

/// `|P|/m! <= t_m <= S(k, m)` when `t_m > 0`; vacuously true otherwise.
pub fn bounds_check(group_order: &BigUint, k: usize, m: usize, t_m: u64) -> bool {
    if t_m == 0 {
        return true;
    }
    let t = BigUint::from(t_m);
    let fact: BigUint = (1..=m).map(BigUint::from).product();
    group_order <= &(&t * fact) && t <= stirling2(k, m)
}
