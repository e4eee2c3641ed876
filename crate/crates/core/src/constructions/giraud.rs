use super::push_with_counts;
use crate::error::{invalid, Result};
use crate::hypergraph::Hypergraph;
use crate::subsets::Combinations;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// Giraud's 4-graph of a square 0/1 matrix.
///
/// Rows are vertices `0..m`, columns `m..2m`. A 4-set is an edge when it
/// has exactly three rows (and one column), exactly three columns (and one
/// row), or two rows and two columns whose 2x2 submatrix has odd sum.
/// Four rows or four columns never form an edge.
pub fn build_giraud(matrix: &[Vec<u8>]) -> Result<Hypergraph> {
    let m = matrix.len();
    if m == 0 {
        return invalid("matrix must have at least one row");
    }
    if matrix.iter().any(|row| row.len() != m) {
        return invalid("matrix must be square");
    }
    if matrix.iter().flatten().any(|&x| x > 1) {
        return invalid("matrix entries must be 0 or 1");
    }
    if 2 * m > MAX_VERTICES {
        return invalid(format!("a {m}x{m} matrix gives more than {MAX_VERTICES} vertices"));
    }
    let rows: VertexSet = (0..m).collect();
    let cols: VertexSet = (m..2 * m).collect();
    let mut edges = Vec::new();
    push_with_counts(&[rows, cols], &[3, 1], &mut edges);
    push_with_counts(&[rows, cols], &[1, 3], &mut edges);
    for rp in Combinations::new(rows, 2) {
        let r = rp.to_vec();
        for cp in Combinations::new(cols, 2) {
            let c = cp.to_vec();
            let sum: u32 = r
                .iter()
                .flat_map(|&i| c.iter().map(move |&j| matrix[i][j - m] as u32))
                .sum();
            if sum % 2 == 1 {
                edges.push(rp.union(cp));
            }
        }
    }
    Ok(Hypergraph::from_unique_unchecked(4, 2 * m, edges))
}
