use super::{contiguous_parts, for_each_composition, push_with_counts};
use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

fn check(p: usize, t: usize, k: usize, l: usize) -> Result<()> {
    if !(t >= k && k > l && l > 1 && p >= 1) {
        return invalid(format!("B(p={p}, t={t}, k={k}, l={l}) needs t >= k > l > 1 and p >= 1"));
    }
    if t * p > MAX_VERTICES {
        return Err(Error::UnsupportedSize(format!("B has {} vertices", t * p)));
    }
    Ok(())
}

/// The two edge classes of `B(p,t,k,l)` on vertices offset by `offset`:
/// `E1` (fewer than `l` vertices in every part) and `E2` (exactly `l` in
/// some part `V_i` and one in each of `V_{i+1}, ..., V_{i+k-l}`, indices mod `t`).
pub fn b_graph_components(p: usize, t: usize, k: usize, l: usize) -> Result<(Vec<VertexSet>, Vec<VertexSet>)> {
    check(p, t, k, l)?;
    Ok(components_at(p, t, k, l, 0))
}

pub(crate) fn components_at(p: usize, t: usize, k: usize, l: usize, offset: usize) -> (Vec<VertexSet>, Vec<VertexSet>) {
    let parts = contiguous_parts(t, p, offset);
    let mut e1 = Vec::new();
    for_each_composition(&vec![(l - 1).min(p); t], k, |counts| push_with_counts(&parts, counts, &mut e1));

    let mut e2 = Vec::new();
    let mut counts = vec![0usize; t];
    for i in 0..t {
        counts.iter_mut().for_each(|c| *c = 0);
        counts[i] = l;
        for j in 1..=k - l {
            counts[(i + j) % t] = 1;
        }
        push_with_counts(&parts, &counts, &mut e2);
    }
    (e1, e2)
}

/// `B(p,t,k,l)`: `t` parts of size `p`, edges `E1 ∪ E2`.
pub fn build_b(p: usize, t: usize, k: usize, l: usize) -> Result<Hypergraph> {
    let (mut e1, e2) = b_graph_components(p, t, k, l)?;
    e1.extend(e2);
    Ok(Hypergraph::from_unique_unchecked(k, t * p, e1))
}
