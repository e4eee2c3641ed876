use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::bounded::big_binomial;
use crate::error::{invalid, Error, Result};

/// Upper end of the scan before giving up.
pub const DEFAULT_SCAN_LIMIT: u64 = 200_000_000;

/// Outcome of the two threshold conditions at a given `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThresholdCheck {
    pub m: u64,
    /// `C(m, l) exp(-eps^2 m / (8 (k-l)^2)) <= 1/2`, with the left side rounded up.
    pub concentration: bool,
    /// `(C(m,k-l) - C(m-l,k-l)) / (C(m,k-l) - C(m-l,k-l)/2) <= eps`.
    pub ratio: bool,
}

impl ThresholdCheck {
    pub fn holds(&self) -> bool {
        self.concentration && self.ratio
    }
}

fn validate(k: usize, l: usize, epsilon: &BigRational) -> Result<()> {
    if !(k > l && l >= 1) {
        return invalid(format!("need k > l >= 1, got k = {k}, l = {l}"));
    }
    if !epsilon.is_positive() || *epsilon >= BigRational::one() {
        return invalid(format!("epsilon = {epsilon} must lie in (0, 1)"));
    }
    Ok(())
}

/// Lower bound on `exp(x) * 2^prec` for rational `x >= 0`, rounding down at every step.
fn exp_lower_fixed(x: &BigRational, prec: u64) -> BigUint {
    let scaled = (x * BigRational::from_integer(BigInt::one() << prec)).floor().to_integer();
    let scaled = scaled.to_biguint().unwrap_or_default();
    // halve the argument until it is below one
    let one = BigUint::one() << prec;
    let mut halvings = 0u64;
    while (&scaled >> halvings) >= one {
        halvings += 1;
    }
    let y = &scaled >> halvings;
    let mut term = one.clone();
    let mut sum = one.clone();
    let mut i = 1u64;
    loop {
        term = ((&term * &y) >> prec) / i;
        if term.is_zero() {
            break;
        }
        sum += &term;
        i += 1;
    }
    for _ in 0..halvings {
        sum = (&sum * &sum) >> prec;
    }
    sum
}

fn concentration_exact(k: usize, l: usize, epsilon: &BigRational, m: u64) -> bool {
    let r = (k - l) as u64;
    let x = epsilon * epsilon * BigRational::from_integer(m.into())
        / BigRational::from_integer((8 * r * r).into());
    // exp(x) can be huge; give the fixed-point value enough headroom.
    let halvings = x.to_f64().unwrap_or(f64::MAX).max(1.0).log2().ceil() as u64 + 1;
    let prec = 160 + 2 * halvings;
    let lower = exp_lower_fixed(&x, prec);
    (big_binomial(m, l as u64) * 2u32) << prec <= lower
}

fn ratio_exact(k: usize, l: usize, epsilon: &BigRational, m: u64) -> bool {
    let r = (k - l) as u64;
    let full = BigInt::from(big_binomial(m, r));
    let rest = BigInt::from(big_binomial(m.saturating_sub(l as u64), r));
    let num = &full - &rest;
    let den2 = &full * BigInt::from(2) - &rest; // twice the denominator
    if !den2.is_positive() {
        return false;
    }
    BigRational::new(num * BigInt::from(2), den2) <= *epsilon
}

fn ln_binomial(m: u64, r: u64) -> f64 {
    (0..r).map(|i| ((m - i) as f64 / (i + 1) as f64).ln()).sum()
}

/// Cheap floating-point screen: `false` only when a condition clearly fails.
fn plausible(k: usize, l: usize, eps: f64, m: u64) -> bool {
    let r = (k - l) as f64;
    let lhs = ln_binomial(m, l as u64) + std::f64::consts::LN_2;
    let rhs = eps * eps * m as f64 / (8.0 * r * r);
    if lhs - rhs > 1e-9 * (lhs.abs() + rhs.abs() + 1.0) {
        return false;
    }
    let ri = (k - l) as u64;
    if m < ri + l as u64 {
        return true;
    }
    // C(m-l, r) / C(m, r) = prod_{i<r} (m-l-i)/(m-i)
    let frac: f64 = (0..ri).map(|i| (m - l as u64 - i) as f64 / (m - i) as f64).product();
    let ratio = (1.0 - frac) / (1.0 - frac / 2.0);
    ratio <= eps * (1.0 + 1e-9) + 1e-12
}

/// Evaluates both threshold conditions at `m` exactly.
pub fn threshold_conditions(k: usize, l: usize, epsilon: &BigRational, m: u64) -> Result<ThresholdCheck> {
    validate(k, l, epsilon)?;
    Ok(ThresholdCheck {
        m,
        concentration: concentration_exact(k, l, epsilon, m),
        ratio: ratio_exact(k, l, epsilon, m),
    })
}

/// Smallest `m >= k` satisfying both sampling conditions.
pub fn m_threshold(k: usize, l: usize, epsilon: &BigRational) -> Result<u64> {
    m_threshold_with_limit(k, l, epsilon, DEFAULT_SCAN_LIMIT)
}

pub fn m_threshold_with_limit(k: usize, l: usize, epsilon: &BigRational, limit: u64) -> Result<u64> {
    validate(k, l, epsilon)?;
    let eps = epsilon.to_f64().expect("epsilon in (0,1)");
    for m in k as u64..=limit {
        if !plausible(k, l, eps, m) {
            continue;
        }
        if ratio_exact(k, l, epsilon, m) && concentration_exact(k, l, epsilon, m) {
            return Ok(m);
        }
    }
    Err(Error::ResourceLimit(format!(
        "no threshold found for k = {k}, l = {l}, epsilon = {epsilon} below m = {limit}"
    )))
}
