use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};

/// Exact `C(n, r)`.
pub fn big_binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of ways to pick `k - l` elements from disjoint parts of sizes
/// `parts` taking at most `l - 1` from each part.
///
/// Computed as the coefficient of `x^(k-l)` in
/// `prod_i sum_{q < l} C(n_i, q) x^q`.
pub fn f_multi(parts: &[u64], k: usize, l: usize) -> Result<BigUint> {
    if l <= 1 || k <= l {
        return invalid(format!("need k > l > 1, got k = {k}, l = {l}"));
    }
    let target = k - l;
    let mut poly = vec![BigUint::zero(); target + 1];
    poly[0] = BigUint::one();
    for &size in parts {
        let factor: Vec<BigUint> = (0..l.min(target + 1)).map(|q| big_binomial(size, q as u64)).collect();
        let mut next = vec![BigUint::zero(); target + 1];
        for (i, a) in poly.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (q, b) in factor.iter().enumerate() {
                if i + q > target {
                    break;
                }
                next[i + q] += a * b;
            }
        }
        poly = next;
    }
    Ok(poly.swap_remove(target))
}

/// `f_multi` with `a` parts of equal size `n0`.
pub fn f_uniform(n0: u64, a: usize, k: usize, l: usize) -> Result<BigUint> {
    f_multi(&vec![n0; a], k, l)
}
