use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::subsets::{binomial, colex_rank, Combinations};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The label `X_S in 0..m` drawn for the l-set `S`.
///
/// Each set gets its own generator, seeded by hashing its sorted members
/// into `seed`, so values do not depend on enumeration order.
pub fn link_value(seed: u64, set: VertexSet, m: usize) -> usize {
    let mut h = mix(seed);
    for v in set.iter() {
        h = mix(h ^ v as u64);
    }
    h = mix(h ^ set.len() as u64);
    ChaCha8Rng::seed_from_u64(h).gen_range(0..m)
}

/// Random k-graph on `n` vertices whose `(l-1)`-links map homomorphically into `base`.
///
/// A sorted k-set `i_1 < ... < i_k` is an edge iff the labels of
/// `{i_1..i_{l-1}, i_{l-1+j}}` for `j = 1..=k-l+1` are pairwise distinct
/// and form an edge of `base`.
pub fn build_random_link(base: &Hypergraph, n: usize, k: usize, l: usize, seed: u64) -> Result<Hypergraph> {
    if !(k > l && l >= 2) {
        return invalid(format!("random link graph needs k > l >= 2, got k = {k}, l = {l}"));
    }
    if base.k() != k - l + 1 {
        return invalid(format!(
            "base must be {}-uniform for k = {k}, l = {l}, got {}",
            k - l + 1,
            base.k()
        ));
    }
    if n < k {
        return invalid(format!("need n >= k, got n = {n}"));
    }
    if n > MAX_VERTICES {
        return Err(Error::UnsupportedSize(format!("{n} vertices")));
    }
    let m = base.n();
    if m == 0 {
        return Hypergraph::edgeless(n, k);
    }
    let mut labels = vec![0usize; binomial(n as u64, l as u64) as usize];
    for s in Combinations::of_range(n, l) {
        labels[colex_rank(s) as usize] = link_value(seed, s, m);
    }

    let mut edges = Vec::new();
    let mut members = Vec::with_capacity(k);
    for e in Combinations::of_range(n, k) {
        members.clear();
        members.extend(e.iter());
        let prefix: VertexSet = members[..l - 1].iter().copied().collect();
        let mut image = VertexSet::EMPTY;
        let mut distinct = true;
        for &v in &members[l - 1..] {
            let x = labels[colex_rank(prefix.with(v)) as usize];
            if image.contains(x) {
                distinct = false;
                break;
            }
            image.insert(x);
        }
        if distinct && base.has_edge(image) {
            edges.push(e);
        }
    }
    Ok(Hypergraph::from_unique_unchecked(k, n, edges))
}
