//! Brute-force oracles shared by the integration tests. They deliberately
//! avoid the library's own enumeration helpers.

#![allow(dead_code)]

use hyperturan::{ForbiddenFamily, Hypergraph, VertexSet};
use proptest::prelude::*;

/// All r-subsets of `0..n` as sorted vectors.
pub fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

pub fn choose(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn graph_from_mask(k: usize, n: usize, mask: &[bool]) -> Hypergraph {
    let edges: Vec<VertexSet> = subsets(n, k)
        .into_iter()
        .zip(mask)
        .filter(|(_, keep)| **keep)
        .map(|(e, _)| VertexSet::from_slice(&e))
        .collect();
    Hypergraph::new(k, n, edges).unwrap()
}

/// Random k-graph with `k <= n <= max_n`, k in `1..=max_k`.
pub fn arb_graph(max_n: usize, max_k: usize) -> impl Strategy<Value = Hypergraph> {
    (1..=max_n)
        .prop_flat_map(move |n| (Just(n), 1..=max_k.min(n)))
        .prop_flat_map(|(n, k)| {
            let slots = choose(n as u64, k as u64) as usize;
            (Just(n), Just(k), proptest::collection::vec(any::<bool>(), slots))
        })
        .prop_map(|(n, k, mask)| graph_from_mask(k, n, &mask))
}

/// Edges containing `t`, counted directly.
pub fn brute_degree(h: &Hypergraph, t: &[usize]) -> u64 {
    h.edges()
        .iter()
        .filter(|e| t.iter().all(|v| e.contains(*v)))
        .count() as u64
}

pub fn brute_min_degree(h: &Hypergraph, l: usize) -> (u64, Vec<usize>) {
    subsets(h.n(), l)
        .into_iter()
        .map(|t| (brute_degree(h, &t), t))
        .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)))
        .unwrap()
}

/// Edge-preserving injections of `pattern` into `host`, by trying every map.
pub fn brute_injections(host: &Hypergraph, pattern: &Hypergraph) -> u64 {
    fn go(i: usize, map: &mut Vec<usize>, used: &mut Vec<bool>, host: &Hypergraph, pattern: &Hypergraph, count: &mut u64) {
        if i == pattern.n() {
            let ok = pattern.edges().iter().all(|e| {
                let image: Vec<usize> = e.iter().map(|v| map[v]).collect();
                host.has_edge(VertexSet::from_slice(&image))
            });
            *count += ok as u64;
            return;
        }
        for w in 0..host.n() {
            if !used[w] {
                used[w] = true;
                map.push(w);
                go(i + 1, map, used, host, pattern, count);
                map.pop();
                used[w] = false;
            }
        }
    }
    let mut count = 0;
    go(0, &mut Vec::new(), &mut vec![false; host.n()], host, pattern, &mut count);
    count
}

/// (k-l)-subsets of a disjoint union of parts with fewer than l points in each part.
pub fn brute_f(parts: &[u64], k: usize, l: usize) -> u64 {
    let owner: Vec<usize> = parts
        .iter()
        .enumerate()
        .flat_map(|(i, &n)| std::iter::repeat_n(i, n as usize))
        .collect();
    subsets(owner.len(), k - l)
        .into_iter()
        .filter(|s| {
            let mut per = vec![0usize; parts.len()];
            for &v in s {
                per[owner[v]] += 1;
            }
            per.iter().all(|&c| c < l)
        })
        .count() as u64
}

pub fn k4_3() -> Hypergraph {
    Hypergraph::complete(4, 3).unwrap()
}

pub fn family(members: Vec<Hypergraph>) -> ForbiddenFamily {
    let k = members[0].k();
    ForbiddenFamily::new(k, members).unwrap()
}

/// Whether `host` has `k+1` vertices spanning only edges.
pub fn brute_has_clique(host: &Hypergraph, size: usize) -> bool {
    subsets(host.n(), size).into_iter().any(|s| {
        subsets(size, host.k()).into_iter().all(|idx| {
            let e: Vec<usize> = idx.iter().map(|&i| s[i]).collect();
            host.has_edge(VertexSet::from_slice(&e))
        })
    })
}
