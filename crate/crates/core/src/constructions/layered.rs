use super::b_graph::components_at;
use super::{contiguous_parts, for_each_composition, push_with_counts};
use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// Edge classes of the layered graph.
#[derive(Clone, Debug, Default)]
pub struct LayeredComponents {
    /// Fewer than `l` vertices in every block.
    pub e1: Vec<VertexSet>,
    /// Exactly `l` in block `i0`, fewer than `l` in each of the next `a`
    /// blocks (cyclically), none elsewhere.
    pub e2: Vec<VertexSet>,
    /// The copy of `B(p,t,k,l)` inside each block.
    pub blocks: Vec<Vec<VertexSet>>,
}

fn check(k: usize, l: usize, a: usize, b: usize, t: usize, p: usize) -> Result<()> {
    if !(k > l && l > 1) {
        return invalid(format!("layered graph needs k > l > 1, got k = {k}, l = {l}"));
    }
    if !(a > 0 && a + k < b) {
        return invalid(format!("layered graph needs 0 < a and a + k < b, got a = {a}, b = {b}"));
    }
    if t < k {
        return invalid(format!("layered graph needs t >= k, got t = {t}"));
    }
    if p < l {
        return invalid(format!("layered graph needs p >= l, got p = {p}"));
    }
    let n = b * t * p;
    if n > MAX_VERTICES {
        return Err(Error::UnsupportedSize(format!("layered graph has {n} vertices")));
    }
    Ok(())
}

pub fn layered_components(k: usize, l: usize, a: usize, b: usize, t: usize, p: usize) -> Result<LayeredComponents> {
    check(k, l, a, b, t, p)?;
    let block_size = t * p;
    let blocks = contiguous_parts(b, block_size, 0);

    let mut e1 = Vec::new();
    for_each_composition(&vec![l - 1; b], k, |counts| push_with_counts(&blocks, counts, &mut e1));

    let mut e2 = Vec::new();
    let mut caps = vec![0usize; b];
    for i0 in 0..b {
        caps.iter_mut().for_each(|c| *c = 0);
        for j in 1..=a {
            caps[(i0 + j) % b] = l - 1;
        }
        // choose the k - l vertices outside block i0 first, then pin block i0 to l
        for_each_composition(&caps, k - l, |counts| {
            let mut counts = counts.to_vec();
            counts[i0] = l;
            push_with_counts(&blocks, &counts, &mut e2);
        });
    }

    let copies = (0..b)
        .map(|j| {
            let (mut inner, e2b) = components_at(p, t, k, l, j * block_size);
            inner.extend(e2b);
            inner
        })
        .collect();

    Ok(LayeredComponents { e1, e2, blocks: copies })
}

/// The layered graph on `b * t * p` vertices.
pub fn build_layered(k: usize, l: usize, a: usize, b: usize, t: usize, p: usize) -> Result<Hypergraph> {
    let parts = layered_components(k, l, a, b, t, p)?;
    let mut edges = parts.e1;
    edges.extend(parts.e2);
    for block in parts.blocks {
        edges.extend(block);
    }
    Ok(Hypergraph::from_unique_unchecked(k, b * t * p, edges))
}
