use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::subsets::{binomial, Combinations};
use crate::vertex_set::VertexSet;

/// Default cap on `C(n, m)` for exhaustive counting.
pub const DEFAULT_EXACT_BUDGET: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq)]
pub enum GoodSubsetMode {
    /// Enumerate every m-set; fails if `C(n, m)` exceeds `budget`.
    Exact { budget: u64 },
    /// Uniform sampling of m-sets with a Wilson score interval.
    Sampled { samples: u64, seed: u64, confidence: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct GoodSubsetCount {
    /// `C(n, m)`.
    pub total: u64,
    /// Exact count, or the point estimate `total * hits / samples`.
    pub estimate: f64,
    pub exact: Option<u64>,
    /// Confidence interval on the count (sampling mode only).
    pub interval: Option<(f64, f64)>,
    pub samples: u64,
    pub hits: u64,
    pub confidence: Option<f64>,
}

/// Whether `delta_l(H[S]) > alpha * C(m, k - l)`.
fn is_good(h: &Hypergraph, s: VertexSet, l: usize, threshold: &BigRational) -> Result<bool> {
    let sub = h.induced(s)?;
    let d = sub.min_l_degree(l)?.value;
    Ok(BigRational::from_integer(BigInt::from(d)) > *threshold)
}

/// Counts m-sets `S` whose induced subgraph has minimum l-degree above `alpha * C(m, k-l)`.
pub fn count_good_subsets(
    h: &Hypergraph,
    l: usize,
    m: usize,
    alpha: &BigRational,
    mode: &GoodSubsetMode,
) -> Result<GoodSubsetCount> {
    let (k, n) = (h.k(), h.n());
    if !(l < k && k <= m && m <= h.n()) {
        return invalid(format!("need l < k <= m <= n, got l = {l}, k = {k}, m = {m}, n = {n}"));
    }
    if alpha.is_negative() {
        return invalid("alpha must be non-negative");
    }
    let threshold = alpha * BigRational::from_integer(BigInt::from(binomial(m as u64, (k - l) as u64)));
    let total = binomial(n as u64, m as u64);

    match *mode {
        GoodSubsetMode::Exact { budget } => {
            if total > budget {
                return Err(Error::ResourceLimit(format!(
                    "C({n}, {m}) = {total} exceeds the exact budget {budget}; use sampling"
                )));
            }
            let mut hits = 0u64;
            for s in Combinations::of_range(n, m) {
                if is_good(h, s, l, &threshold)? {
                    hits += 1;
                }
            }
            Ok(GoodSubsetCount {
                total,
                estimate: hits as f64,
                exact: Some(hits),
                interval: None,
                samples: total,
                hits,
                confidence: None,
            })
        }
        GoodSubsetMode::Sampled {
            samples,
            seed,
            confidence,
        } => {
            if samples == 0 {
                return invalid("sample count must be positive");
            }
            if !(confidence > 0.0 && confidence < 1.0) {
                return invalid("confidence must lie in (0, 1)");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut hits = 0u64;
            for _ in 0..samples {
                let s: VertexSet = rand::seq::index::sample(&mut rng, n, m).into_iter().collect();
                if is_good(h, s, l, &threshold)? {
                    hits += 1;
                }
            }
            let (lo, hi) = wilson_interval(hits, samples, confidence);
            let total_f = total.to_f64().unwrap_or(f64::MAX);
            Ok(GoodSubsetCount {
                total,
                estimate: total_f * hits as f64 / samples as f64,
                exact: None,
                interval: Some((lo * total_f, hi * total_f)),
                samples,
                hits,
                confidence: Some(confidence),
            })
        }
    }
}

/// Wilson score interval for a binomial proportion.
fn wilson_interval(hits: u64, trials: u64, confidence: f64) -> (f64, f64) {
    let z = Normal::standard().inverse_cdf(1.0 - (1.0 - confidence) / 2.0);
    let n = trials as f64;
    let p = hits as f64 / n;
    let z2 = z * z;
    let centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = z / (1.0 + z2 / n) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((centre - half).max(0.0), (centre + half).min(1.0))
}
