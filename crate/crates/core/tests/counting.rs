mod common;

use common::*;
use hyperturan::combinatorics::{
    count_good_subsets, f_multi, f_uniform, jump_parameters, layered_parameters, m_threshold,
    threshold_conditions, GoodSubsetMode,
};
use hyperturan::{Hypergraph, VertexSet};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn big(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn bin(n: u64, r: u64) -> BigRational {
    big(choose(n, r))
}

const KL: [(usize, usize); 4] = [(3, 2), (4, 2), (4, 3), (5, 3)];

#[test]
fn f_matches_enumeration_small_parts() {
    fn parts_up_to(total: u64, max_parts: usize) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        let mut frontier = vec![vec![]];
        for _ in 0..max_parts {
            let mut next = Vec::new();
            for p in &frontier {
                let used: u64 = p.iter().sum();
                for s in 0..=total - used {
                    let mut q: Vec<u64> = p.clone();
                    q.push(s);
                    next.push(q);
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
    for parts in parts_up_to(8, 3) {
        for (k, l) in KL {
            let got = f_multi(&parts, k, l).unwrap();
            assert_eq!(got, BigUint::from(brute_f(&parts, k, l)), "{parts:?} k={k} l={l}");
        }
    }
}

#[test]
fn f_examples() {
    assert_eq!(f_multi(&[3, 5], 4, 2).unwrap(), BigUint::from(15u32));
    assert_eq!(f_multi(&[3, 5], 3, 2).unwrap(), BigUint::from(8u32));
    assert_eq!(f_multi(&[4, 4], 5, 3).unwrap(), BigUint::from(brute_f(&[4, 4], 5, 3)));
    assert_eq!(f_uniform(6, 1, 3, 2).unwrap(), BigUint::from(6u32));
    assert_eq!(f_uniform(4, 2, 5, 3).unwrap(), BigUint::from(brute_f(&[4, 4], 5, 3)));
    assert!(f_multi(&[3], 3, 1).is_err());
}

proptest! {
    #[test]
    fn f_is_bounded_by_binomial(n0 in 0u64..30, a in 1usize..6, kl in 0usize..4) {
        let (k, l) = KL[kl];
        let f = f_uniform(n0, a, k, l).unwrap();
        prop_assert!(f <= BigUint::from(choose(a as u64 * n0, (k - l) as u64)));
    }
}

/// The displayed chain of lower bounds on `f(n0/b; a)`, plus the upper bounds.
#[test]
fn sandwich_chain() {
    for (k, l) in [(3, 2), (4, 2), (4, 3), (5, 2), (5, 3), (6, 3)] {
        let r_ = (k - l) as u64;
        for b in 2u64..=8 {
            for a in 1..b {
                for n0 in (b..=120).step_by(b as usize) {
                    let part = n0 / b;
                    let f = BigRational::from_integer(BigInt::from(
                        f_uniform(part, a as usize, k, l).unwrap(),
                    ));
                    let top = bin(a * part, r_);
                    let second = if k >= 2 * l && a * part >= l as u64 {
                        big(a) * bin(part, l as u64) * bin(a * part - l as u64, (k - 2 * l) as u64)
                    } else {
                        big(0)
                    };
                    let third = if k >= 2 * l {
                        num_traits::pow(big(a), k - 2 * l + 1) / num_traits::pow(big(b), k - l)
                            * bin(n0, l as u64)
                            * bin(n0.saturating_sub(l as u64), (k - 2 * l) as u64)
                    } else {
                        big(0)
                    };
                    let closed = num_traits::pow(r(a as i64, b as i64), k - l)
                        / num_traits::pow(big(a), l - 1)
                        * bin((k - l) as u64, l as u64)
                        * bin(n0, r_);
                    assert!(f >= &top - &second, "first step {k} {l} {a} {b} {n0}");
                    assert!(&top - &second >= &top - &third, "second step {k} {l} {a} {b} {n0}");
                    assert_eq!(third, closed, "identity {k} {l} {a} {b} {n0}");
                    assert!(f <= top);
                    assert!(top <= num_traits::pow(r(a as i64, b as i64), k - l) * bin(n0, r_));
                }
            }
        }
    }
}

#[test]
fn jump_parameters_properties() {
    let mut last = None;
    for num in 1..20 {
        let delta = r(num, 200);
        let p = jump_parameters(3, 2, &delta).unwrap();
        assert!(p.t >= 3);
        assert!(p.checks.iter().all(|(_, ok)| *ok), "{:?}", p.checks);
        if let Some(prev) = last {
            assert!(p.epsilon0_pow > prev);
        }
        last = Some(p.epsilon0_pow.clone());
    }
    assert!(jump_parameters(3, 2, &r(0, 1)).is_err());
    assert!(jump_parameters(3, 2, &r(2, 1)).is_err());
}

#[test]
fn layered_parameter_examples() {
    let delta = r(1, 10);
    let p = layered_parameters(3, 2, &delta, &r(1, 5)).unwrap();
    let lp = p.layered.unwrap();
    assert_eq!((lp.a, lp.b), (1, 5));
    let p = layered_parameters(3, 2, &delta, &r(1, 2)).unwrap();
    let lp = p.layered.unwrap();
    assert_eq!((lp.a, lp.b), (4, 8));
    assert!(lp.epsilon > r(0, 1));
    // M >= b l / (1 - q)
    let floor = r((lp.b * 2) as i64, 1) / (r(1, 1) - r(1, 2));
    assert!(BigRational::from_integer(BigInt::from(lp.m.clone())) >= floor);
    assert!(layered_parameters(3, 2, &delta, &r(1, 1)).is_err());
}

/// Independent floating-point reading of the two threshold conditions.
fn conditions_f64(k: usize, l: usize, eps: f64, m: u64) -> (f64, f64) {
    let c = |n: u64, r: u64| -> f64 {
        if r > n {
            return 0.0;
        }
        (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    };
    let rr = (k - l) as f64;
    let conc = c(m, l as u64) * (-(eps * eps) * m as f64 / (8.0 * rr * rr)).exp();
    let top = c(m, (k - l) as u64) - c(m - l as u64, (k - l) as u64);
    let bottom = c(m, (k - l) as u64) - c(m - l as u64, (k - l) as u64) / 2.0;
    (conc, top / bottom)
}

#[test]
fn threshold_is_smallest() {
    let eps = r(1, 2);
    let v = m_threshold(3, 2, &eps).unwrap();
    let (conc, ratio) = conditions_f64(3, 2, 0.5, v);
    assert!(conc <= 0.5 + 1e-12 && ratio <= 0.5 + 1e-12, "at {v}: {conc} {ratio}");
    let (conc, ratio) = conditions_f64(3, 2, 0.5, v - 1);
    assert!(conc > 0.5 - 1e-12 || ratio > 0.5 - 1e-12, "at {}: {conc} {ratio}", v - 1);
    assert!(threshold_conditions(3, 2, &eps, v).unwrap().holds());
    assert!(!threshold_conditions(3, 2, &eps, v - 1).unwrap().holds());
    let mut prev = u64::MAX;
    for (num, den) in [(2, 5), (1, 2), (3, 5), (7, 10)] {
        let m = m_threshold(3, 2, &r(num, den)).unwrap();
        assert!(m <= prev);
        prev = m;
    }
    assert!(m_threshold(3, 2, &r(0, 1)).is_err());
    assert!(m_threshold(3, 2, &r(1, 1)).is_err());
}

fn good_by_hand(h: &Hypergraph, l: usize, m: usize, alpha: &BigRational) -> u64 {
    let limit = alpha * bin(m as u64, (h.k() - l) as u64);
    subsets(h.n(), m)
        .into_iter()
        .filter(|s| {
            let min = subsets(m, l)
                .into_iter()
                .map(|idx| {
                    let t: Vec<usize> = idx.iter().map(|&i| s[i]).collect();
                    h.edges()
                        .iter()
                        .filter(|e| t.iter().all(|v| e.contains(*v)) && e.iter().all(|v| s.contains(&v)))
                        .count() as u64
                })
                .min()
                .unwrap();
            big(min) > limit
        })
        .count() as u64
}

const EXACT: GoodSubsetMode = GoodSubsetMode::Exact { budget: 1_000_000 };

#[test]
fn good_subsets_against_enumeration() {
    let full = Hypergraph::complete(6, 3).unwrap();
    let minus_one = Hypergraph::new(3, 6, full.edges().iter().copied().filter(|e| *e != VertexSet::from_slice(&[0, 1, 2]))).unwrap();
    let alpha = r(1, 3);
    let got = count_good_subsets(&minus_one, 2, 5, &alpha, &EXACT).unwrap();
    assert_eq!(got.exact, Some(good_by_hand(&minus_one, 2, 5, &alpha)));
    assert_eq!(got.total, 6);

    let complete = Hypergraph::complete(8, 3).unwrap();
    let all = count_good_subsets(&complete, 2, 5, &r(1, 2), &EXACT).unwrap();
    assert_eq!(all.exact, Some(choose(8, 5)));
    let empty = Hypergraph::edgeless(8, 3).unwrap();
    assert_eq!(count_good_subsets(&empty, 2, 5, &r(0, 1), &EXACT).unwrap().exact, Some(0));

    let tight = GoodSubsetMode::Exact { budget: 10 };
    assert!(matches!(
        count_good_subsets(&complete, 2, 5, &r(1, 2), &tight),
        Err(hyperturan::Error::ResourceLimit(_))
    ));
}

#[test]
fn sampling_brackets_exact_count() {
    let h = hyperturan::constructions::build_b(2, 5, 3, 2).unwrap();
    let alpha = r(1, 4);
    let exact = count_good_subsets(&h, 2, 6, &alpha, &EXACT).unwrap().exact.unwrap() as f64;
    assert_eq!(exact as u64, good_by_hand(&h, 2, 6, &alpha));
    let mut covered = 0;
    for seed in 0..10 {
        let mode = GoodSubsetMode::Sampled { samples: 400, seed, confidence: 0.99 };
        let est = count_good_subsets(&h, 2, 6, &alpha, &mode).unwrap();
        let (lo, hi) = est.interval.unwrap();
        covered += (lo <= exact && exact <= hi) as usize;
    }
    assert!(covered >= 9, "interval covered the exact count {covered}/10 times");
}
