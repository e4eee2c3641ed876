use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::bounded::big_binomial;
use crate::error::{invalid, Result};

/// Constants of the jump constructions, evaluated exactly where the
/// formulas allow it.
#[derive(Clone, Debug, PartialEq)]
pub struct JumpParams {
    pub k: usize,
    pub l: usize,
    pub delta: BigRational,
    /// `epsilon0^(k-l) = delta / (1 + (4(k-l)^2)^(k-l))`, exact.
    pub epsilon0_pow: BigRational,
    /// `epsilon0` itself; only exact when `k - l = 1`.
    pub epsilon0: f64,
    /// `floor(1 / epsilon0)`, decided exactly.
    pub t: u64,
    /// `l * t`.
    pub m0: u64,
    /// Each displayed inequality with its verdict.
    pub checks: Vec<(String, bool)>,
    pub layered: Option<LayeredParams>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LayeredParams {
    pub q: BigRational,
    pub a: u64,
    pub b: u64,
    /// `(epsilon0 / b)^(k-l) / 4`, exact.
    pub epsilon: BigRational,
    /// Reported as `b + 1`.
    pub n0: u64,
    /// Ceilings of the four terms of the maximum, in formula order.
    pub m_terms: [BigUint; 4],
    pub m: BigUint,
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn pow(r: &BigRational, e: usize) -> BigRational {
    num_traits::pow(r.clone(), e)
}

/// Exact evaluation of `epsilon0`, `t` and `M0` for a target gap `delta`.
pub fn jump_parameters(k: usize, l: usize, delta: &BigRational) -> Result<JumpParams> {
    if !(k > l && l > 1) {
        return invalid(format!("need k > l > 1, got k = {k}, l = {l}"));
    }
    let r = k - l;
    let upper = pow(&(rat(4 * r * r) / rat(k)), r);
    if !delta.is_positive() {
        return invalid(format!("delta = {delta} violates 0 < delta"));
    }
    if *delta >= upper {
        return invalid(format!("delta = {delta} violates delta < (4 (k-l)^2 / k)^(k-l) = {upper}"));
    }

    let epsilon0_pow = delta / (BigRational::one() + pow(&rat(4 * r * r), r));
    let epsilon0 = epsilon0_pow.to_f64().unwrap_or(0.0).powf(1.0 / r as f64);

    // t = floor(1/epsilon0) is the largest t with t^r * epsilon0^r <= 1.
    let fits = |t: u64| pow(&rat(t), r) * &epsilon0_pow <= BigRational::one();
    let mut t = (1.0 / epsilon0).floor().max(1.0) as u64;
    while !fits(t) {
        t -= 1;
    }
    while fits(t + 1) {
        t += 1;
    }
    let m0 = l as u64 * t;

    let k_pow = pow(&rat(k), r);
    let checks = vec![
        (
            "epsilon0^(k-l) <= k^-(k-l)".to_string(),
            &epsilon0_pow * &k_pow <= BigRational::one(),
        ),
        ("k^-(k-l) < 1/2".to_string(), k_pow > rat(2)),
        ("t = floor(1/epsilon0) >= k".to_string(), t >= k as u64),
        (
            "M0 = l t >= l / (2 (k-l) epsilon0)".to_string(),
            pow(&rat(2 * r as u64 * m0), r) * &epsilon0_pow >= pow(&rat(l), r),
        ),
    ];
    if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
        return invalid(format!("derived constants violate {name}"));
    }
    Ok(JumpParams {
        k,
        l,
        delta: delta.clone(),
        epsilon0_pow,
        epsilon0,
        t,
        m0,
        checks,
        layered: None,
    })
}

/// Smallest integer `x >= 0` with `x^e >= value`.
fn ceil_root(value: &BigRational, e: usize) -> BigUint {
    if !value.is_positive() {
        return BigUint::zero();
    }
    let target = value.ceil().to_integer().to_biguint().expect("positive");
    let mut x = target.nth_root(e as u32);
    if num_traits::pow(x.clone(), e) < target {
        x += 1u32;
    }
    x
}

fn ceil_nonneg(value: &BigRational) -> BigUint {
    value.ceil().to_integer().to_biguint().unwrap_or_default()
}

/// Lower and upper bounds on `ln(1 + y)` for `y > 0` from the first
/// `terms` terms of `2 artanh(y / (2 + y))`.
fn ln1p_bounds(y: &BigRational, terms: usize) -> (BigRational, BigRational) {
    let z = y / (rat(2) + y);
    let z2 = &z * &z;
    let mut power = z.clone();
    let mut sum = BigRational::zero();
    for j in 0..terms {
        sum += &power / rat(2 * j as u64 + 1);
        power = &power * &z2;
    }
    let two = rat(2);
    let lower = &two * &sum;
    let tail = &two * &power / (rat(2 * terms as u64 + 1) * (BigRational::one() - &z2));
    (lower.clone(), lower + tail)
}

/// Constants of the layered construction for the target density `q^(k-l)`.
pub fn layered_parameters(k: usize, l: usize, delta: &BigRational, q: &BigRational) -> Result<JumpParams> {
    if !(q.is_positive() && *q < BigRational::one()) {
        return invalid(format!("q = {q} must lie in (0, 1)"));
    }
    let mut params = jump_parameters(k, l, delta)?;
    let r = k - l;
    let a0 = q.numer().to_u64().expect("reduced numerator fits");
    let b0 = q.denom().to_u64().expect("reduced denominator fits");
    // least c with a0 c + k < b0 c
    let c = k as u64 / (b0 - a0) + 1;
    let (a, b) = (a0 * c, b0 * c);

    let epsilon = &params.epsilon0_pow / (rat(4) * pow(&rat(b), r));
    let n0 = b + 1;

    let gap = delta - &params.epsilon0_pow;
    let t1 = ceil_root(
        &(pow(&rat(2 * r as u64), r) * rat(big_binomial(params.m0, r as u64)) / gap),
        r,
    );

    let y = &params.epsilon0_pow / pow(q, r) / rat(2);
    let numerator = rat(b * l as u64 * r as u64) / q;
    let mut terms = 8;
    let t2 = loop {
        let (lo, hi) = ln1p_bounds(&y, terms);
        let from_hi = ceil_nonneg(&(&numerator / hi));
        let from_lo = ceil_nonneg(&(&numerator / lo));
        if from_hi == from_lo || terms >= 512 {
            // the larger value is the safe one when bounds never meet
            break from_lo;
        }
        terms *= 2;
    };

    let t3 = BigUint::from(n0);
    let t4 = ceil_nonneg(&(rat(b * l as u64) / (BigRational::one() - q)));
    let m_terms = [t1, t2, t3, t4];
    let m = m_terms.iter().max().cloned().expect("four terms");

    params.layered = Some(LayeredParams {
        q: q.clone(),
        a,
        b,
        epsilon,
        n0,
        m_terms,
        m,
    });
    Ok(params)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn reference_instance() {
        let p = jump_parameters(3, 2, &r(1, 10)).unwrap();
        // 1 + (4 (k-l)^2)^(k-l) = 5 when k - l = 1
        assert_eq!(p.epsilon0_pow, r(1, 50));
        assert!((p.epsilon0 - 0.02).abs() < 1e-15);
        assert_eq!((p.t, p.m0), (50, 100));
        assert!(p.checks.iter().all(|(_, ok)| *ok));
    }

    #[test]
    fn delta_range_is_enforced() {
        assert!(jump_parameters(3, 2, &r(0, 1)).is_err());
        let err = jump_parameters(3, 2, &r(4, 3)).unwrap_err().to_string();
        assert!(err.contains("delta <"), "{err}");
        assert!(jump_parameters(3, 1, &r(1, 10)).is_err());
    }

    #[test]
    fn floor_is_exact_for_higher_roots() {
        // k - l = 2: epsilon0^2 = delta / 257
        let p = jump_parameters(4, 2, &r(1, 2)).unwrap();
        let t = p.t;
        let e = &p.epsilon0_pow;
        assert!(pow(&rat(t), 2) * e <= BigRational::one());
        assert!(pow(&rat(t + 1), 2) * e > BigRational::one());
    }

    #[test]
    fn epsilon0_increases_with_delta() {
        let mut last = 0.0;
        for num in 1..20 {
            let p = jump_parameters(5, 3, &r(num, 20)).unwrap();
            assert!(p.epsilon0 > last);
            last = p.epsilon0;
            assert!(p.t >= 5);
        }
    }

    #[test]
    fn layered_scaling() {
        let p = layered_parameters(3, 2, &r(1, 10), &r(1, 2)).unwrap();
        let lp = p.layered.as_ref().unwrap();
        assert_eq!((lp.a, lp.b), (4, 8));
        assert_eq!(lp.epsilon, r(1, 50 * 32));
        // 2 * C(100, 1) / (1/10 - 1/50)
        assert_eq!(lp.m_terms[0], BigUint::from(2500u32));
        assert_eq!(lp.m_terms[3], BigUint::from(32u32));
        assert!(lp.m >= lp.m_terms[3]);

        let p = layered_parameters(3, 2, &r(1, 10), &r(1, 5)).unwrap();
        let lp = p.layered.unwrap();
        assert_eq!((lp.a, lp.b), (1, 5));
        assert!(layered_parameters(3, 2, &r(1, 10), &r(1, 1)).is_err());
        assert!(layered_parameters(3, 2, &r(1, 10), &r(0, 1)).is_err());
    }

    #[test]
    fn ln_bounds_bracket_f64() {
        for y in [r(1, 340), r(1, 2), r(3, 1)] {
            let (lo, hi) = ln1p_bounds(&y, 16);
            let v = y.to_f64().unwrap().ln_1p();
            assert!(lo.to_f64().unwrap() <= v + 1e-15 && v <= hi.to_f64().unwrap() + 1e-15);
        }
    }
}
