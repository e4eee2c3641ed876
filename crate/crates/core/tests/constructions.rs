mod common;

use common::*;
use hyperturan::combinatorics::f_uniform;
use hyperturan::constructions::{
    b_graph_components, build_b, build_giraud, build_layered, build_random_link, layered_components,
    sylvester_hadamard, sylvester_signed,
};
use hyperturan::{contains, is_family_free, Hypergraph, VertexSet};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn k5_4() -> Hypergraph {
    Hypergraph::complete(5, 4).unwrap()
}

#[test]
fn b_fact_grid() {
    for (k, l) in [(3, 2), (4, 2), (4, 3), (5, 3)] {
        for t in [k, k + 1] {
            for p in [l, l + 1] {
                let b = build_b(p, t, k, l).unwrap();
                assert_eq!(b.n(), t * p);
                let want = (p as u64).pow((k - l) as u32);
                assert_eq!(b.min_l_degree(l).unwrap().value, want, "B({p},{t},{k},{l})");
            }
        }
    }
}

#[test]
fn b_small_cases() {
    assert_eq!(build_b(1, 5, 3, 2).unwrap(), Hypergraph::complete(5, 3).unwrap());
    let b = build_b(2, 4, 3, 2).unwrap();
    assert_eq!(b.degree(VertexSet::from_slice(&[0, 1])).unwrap(), 2);
    let part = b.induced(VertexSet::from_slice(&[0, 1])).unwrap();
    assert_eq!(part, Hypergraph::edgeless(2, 3).unwrap());
    let (e1, e2) = b_graph_components(2, 4, 3, 2).unwrap();
    assert!(e1.iter().all(|e| !e2.contains(e)));
    assert_eq!(e1.len() + e2.len(), b.edge_count());
    assert!(build_b(2, 2, 3, 2).is_err());
    assert!(build_b(0, 4, 3, 2).is_err());
}

const LAYERED: [(usize, usize, usize, usize, usize, usize); 5] = [
    (3, 2, 1, 5, 3, 2),
    (3, 2, 2, 6, 3, 2),
    (3, 2, 1, 5, 4, 2),
    (3, 2, 1, 5, 3, 3),
    (4, 2, 1, 6, 4, 2),
];

#[test]
fn layered_degree_formula() {
    for (k, l, a, b, t, p) in LAYERED {
        let h = build_layered(k, l, a, b, t, p).unwrap();
        assert_eq!(h.n(), b * t * p);
        let f = f_uniform((t * p) as u64, a, k, l).unwrap().to_u64().unwrap();
        let want = f + (p as u64).pow((k - l) as u32);
        assert_eq!(h.min_l_degree(l).unwrap().value, want, "{:?}", (k, l, a, b, t, p));
    }
    assert_eq!(build_layered(3, 2, 1, 5, 3, 2).unwrap().min_l_degree(2).unwrap().value, 8);
}

#[test]
fn layered_pieces_are_disjoint_and_blocks_are_b() {
    for (k, l, a, b, t, p) in LAYERED {
        let parts = layered_components(k, l, a, b, t, p).unwrap();
        let h = build_layered(k, l, a, b, t, p).unwrap();
        let block_edges: Vec<VertexSet> = parts.blocks.iter().flatten().copied().collect();
        let total = parts.e1.len() + parts.e2.len() + block_edges.len();
        assert_eq!(total, h.edge_count(), "pieces overlap for {:?}", (k, l, a, b, t, p));
        let size = t * p;
        let expected = build_b(p, t, k, l).unwrap();
        for j in 0..b {
            let block = VertexSet::from_slice(&(j * size..(j + 1) * size).collect::<Vec<_>>());
            assert_eq!(h.induced(block).unwrap(), expected);
        }
    }
    assert!(build_layered(3, 2, 1, 4, 3, 2).is_err());
    assert!(build_layered(3, 2, 1, 5, 3, 1).is_err());
}

#[test]
fn hadamard_matrices() {
    assert_eq!(sylvester_hadamard(1).unwrap(), vec![vec![1]]);
    assert_eq!(sylvester_hadamard(2).unwrap(), vec![vec![1, 1], vec![1, 0]]);
    for order in [2, 4, 8, 16, 32] {
        let h = sylvester_hadamard(order).unwrap();
        let s = sylvester_signed(order).unwrap();
        for i in 0..order {
            for j in i + 1..order {
                let agree = (0..order).filter(|&c| h[i][c] == h[j][c]).count();
                assert_eq!(agree, order / 2);
                let dot: i64 = (0..order).map(|c| (s[i][c] * s[j][c]) as i64).sum();
                assert_eq!(dot, 0);
            }
        }
    }
    assert!(sylvester_hadamard(3).is_err());
    assert!(sylvester_hadamard(64).is_err());
}

#[test]
fn giraud_three_row_edges() {
    for m in [4, 8] {
        let g = build_giraud(&sylvester_hadamard(m).unwrap()).unwrap();
        let rows = g.edges().iter().filter(|e| e.iter().filter(|&v| v < m).count() == 3).count();
        let cols = g.edges().iter().filter(|e| e.iter().filter(|&v| v >= m).count() == 3).count();
        assert_eq!(rows as u64, m as u64 * choose(m as u64, 3));
        assert_eq!(cols, rows);
    }
}

#[test]
fn giraud_sylvester_is_k5_free() {
    for m in [4, 8] {
        let g = build_giraud(&sylvester_hadamard(m).unwrap()).unwrap();
        assert!(!contains(&g, &k5_4()).unwrap(), "m = {m}");
    }
}

#[test]
fn giraud_exhaustive_small_matrices() {
    for m in 1..=3usize {
        for bits in 0u32..1 << (m * m) {
            let matrix: Vec<Vec<u8>> = (0..m)
                .map(|i| (0..m).map(|j| (bits >> (i * m + j) & 1) as u8).collect())
                .collect();
            let g = build_giraud(&matrix).unwrap();
            assert!(!brute_has_clique(&g, 5), "{matrix:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn giraud_random_matrices_are_k5_free(m in 4usize..=6, bits in proptest::collection::vec(0u8..2, 36)) {
        let matrix: Vec<Vec<u8>> = (0..m).map(|i| bits[i * m..(i + 1) * m].to_vec()).collect();
        let g = build_giraud(&matrix).unwrap();
        prop_assert!(!contains(&g, &k5_4()).unwrap());
    }
}

/// Taking four rows (or four columns) as edges as well would always create a K5^4 once m >= 5.
#[test]
fn four_rows_as_edges_breaks_freeness() {
    let m = 5;
    let g = build_giraud(&vec![vec![0u8; m]; m]).unwrap();
    let extra = subsets(m, 4)
        .into_iter()
        .flat_map(|q| [VertexSet::from_slice(&q), VertexSet::from_slice(&q.iter().map(|v| v + m).collect::<Vec<_>>())]);
    let variant = Hypergraph::new(4, 2 * m, g.edges().iter().copied().chain(extra)).unwrap();
    assert!(contains(&variant, &k5_4()).unwrap());
    assert!(!contains(&g, &k5_4()).unwrap());
}

#[test]
fn giraud_rejects_bad_matrices() {
    assert!(build_giraud(&[vec![0, 1], vec![1]]).is_err());
    assert!(build_giraud(&[vec![2]]).is_err());
    assert!(build_giraud(&[]).is_err());
}

fn complete_bipartite(side: usize) -> Hypergraph {
    let edges: Vec<VertexSet> = (0..side)
        .flat_map(|i| (side..2 * side).map(move |j| VertexSet::from_slice(&[i, j])))
        .collect();
    Hypergraph::new(2, 2 * side, edges).unwrap()
}

#[test]
fn random_link_is_deterministic_and_free() {
    let base = complete_bipartite(10);
    let fam = family(vec![k4_3()]);
    for seed in 0..3 {
        let a = build_random_link(&base, 40, 3, 2, seed).unwrap();
        let b = build_random_link(&base, 40, 3, 2, seed).unwrap();
        assert_eq!(a, b);
        assert!(is_family_free(&a, &fam).unwrap());
    }
    assert_ne!(
        build_random_link(&base, 40, 3, 2, 0).unwrap(),
        build_random_link(&base, 40, 3, 2, 1).unwrap()
    );
    assert!(build_random_link(&Hypergraph::complete(4, 3).unwrap(), 10, 3, 2, 0).is_err());
}

#[test]
fn random_link_over_triangle_free_bases() {
    // a pentagon and an 8-cycle are triangle-free, so no K4^3 can appear
    for m in [5usize, 8] {
        let cycle = Hypergraph::new(2, m, (0..m).map(|i| VertexSet::from_slice(&[i, (i + 1) % m]))).unwrap();
        for seed in 0..5 {
            let h = build_random_link(&cycle, 12, 3, 2, seed).unwrap();
            assert!(!brute_has_clique(&h, 4), "m = {m}, seed = {seed}");
        }
    }
    // a base containing a triangle gives no such guarantee, and typically fails
    let triangle = Hypergraph::complete(3, 2).unwrap();
    let hits = (0..20)
        .filter(|&seed| brute_has_clique(&build_random_link(&triangle, 12, 3, 2, seed).unwrap(), 4))
        .count();
    assert!(hits > 0);
}
