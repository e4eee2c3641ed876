//! Generators for the explicit constructions.
//!
//! Labelling is contiguous throughout: in `B(p,t,k,l)` part `V_i` is
//! `{i*p, ..., i*p + p - 1}`; in the layered graph block `W_j` is
//! `{j*t*p, ..., (j+1)*t*p - 1}` and carries its own copy of `B` with the
//! same part layout shifted by `j*t*p`.

mod b_graph;
mod giraud;
mod hadamard;
mod layered;
mod random_link;

pub use b_graph::{b_graph_components, build_b};
pub use giraud::build_giraud;
pub use hadamard::{sylvester_hadamard, sylvester_signed, HadamardOrder};
pub use layered::{build_layered, layered_components};
pub use random_link::{build_random_link, link_value};

use crate::error::Result;
use crate::hypergraph::Hypergraph;
use crate::subsets::Combinations;
use crate::vertex_set::VertexSet;

/// Parameters of one named construction.
#[derive(Clone, Debug, PartialEq)]
pub enum ConstructionSpec {
    B { p: usize, t: usize, k: usize, l: usize },
    Layered { k: usize, l: usize, a: usize, b: usize, t: usize, p: usize },
    Giraud { matrix: Vec<Vec<u8>> },
    RandomLink { base: Hypergraph, n: usize, k: usize, l: usize, seed: u64 },
}

impl ConstructionSpec {
    pub fn build(&self) -> Result<Hypergraph> {
        match self {
            ConstructionSpec::B { p, t, k, l } => build_b(*p, *t, *k, *l),
            ConstructionSpec::Layered { k, l, a, b, t, p } => build_layered(*k, *l, *a, *b, *t, *p),
            ConstructionSpec::Giraud { matrix } => build_giraud(matrix),
            ConstructionSpec::RandomLink { base, n, k, l, seed } => build_random_link(base, *n, *k, *l, *seed),
        }
    }

    pub fn variant(&self) -> &'static str {
        match self {
            ConstructionSpec::B { .. } => "B",
            ConstructionSpec::Layered { .. } => "Layered",
            ConstructionSpec::Giraud { .. } => "Giraud",
            ConstructionSpec::RandomLink { .. } => "RandomLink",
        }
    }

    /// Parameter list as `(key, value)` pairs, for metadata records.
    pub fn parameters(&self) -> Vec<(String, String)> {
        let kv = |pairs: &[(&str, usize)]| pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        match self {
            ConstructionSpec::B { p, t, k, l } => kv(&[("p", *p), ("t", *t), ("k", *k), ("l", *l)]),
            ConstructionSpec::Layered { k, l, a, b, t, p } => {
                kv(&[("k", *k), ("l", *l), ("a", *a), ("b", *b), ("t", *t), ("p", *p)])
            }
            ConstructionSpec::Giraud { matrix } => {
                let rows: Vec<String> = matrix
                    .iter()
                    .map(|r| r.iter().map(|x| x.to_string()).collect::<String>())
                    .collect();
                vec![("m".into(), matrix.len().to_string()), ("matrix".into(), rows.join(","))]
            }
            ConstructionSpec::RandomLink { base, n, k, l, seed } => vec![
                ("base_k".into(), base.k().to_string()),
                ("base_n".into(), base.n().to_string()),
                ("base_edges".into(), base.edge_count().to_string()),
                ("n".into(), n.to_string()),
                ("k".into(), k.to_string()),
                ("l".into(), l.to_string()),
                ("seed".into(), seed.to_string()),
            ],
        }
    }
}

/// Every k-set taking exactly `counts[i]` vertices from `parts[i]`.
pub(crate) fn push_with_counts(parts: &[VertexSet], counts: &[usize], out: &mut Vec<VertexSet>) {
    fn go(parts: &[VertexSet], counts: &[usize], acc: VertexSet, out: &mut Vec<VertexSet>) {
        match parts.split_first() {
            None => out.push(acc),
            Some((first, rest)) => {
                for pick in Combinations::new(*first, counts[0]) {
                    go(rest, &counts[1..], acc.union(pick), out);
                }
            }
        }
    }
    go(parts, counts, VertexSet::EMPTY, out);
}

/// Calls `visit` with every vector `c` with `c[i] <= caps[i]` and `sum c = total`.
pub(crate) fn for_each_composition(caps: &[usize], total: usize, mut visit: impl FnMut(&[usize])) {
    fn go(caps: &[usize], left: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        let i = cur.len();
        if i == caps.len() {
            if left == 0 {
                visit(cur);
            }
            return;
        }
        let room: usize = caps[i + 1..].iter().sum();
        for c in 0..=caps[i].min(left) {
            if left - c > room {
                continue;
            }
            cur.push(c);
            go(caps, left - c, cur, visit);
            cur.pop();
        }
    }
    go(caps, total, &mut Vec::with_capacity(caps.len()), &mut visit);
}

/// Contiguous parts `{i*size, ..., i*size + size - 1}` starting at `offset`.
pub(crate) fn contiguous_parts(count: usize, size: usize, offset: usize) -> Vec<VertexSet> {
    (0..count)
        .map(|i| (offset + i * size..offset + (i + 1) * size).collect())
        .collect()
}
