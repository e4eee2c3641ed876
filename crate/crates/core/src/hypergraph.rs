//! Immutable k-uniform hypergraphs and their degree structure.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::subsets::{binomial, colex_rank, Combinations};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// A k-uniform hypergraph on the vertices `0..n`.
///
/// Edges are stored once each, sorted lexicographically. Values are
/// immutable after construction and cheap to share between threads.
#[derive(Clone)]
pub struct Hypergraph {
    k: usize,
    n: usize,
    edges: Vec<VertexSet>,
    lookup: HashSet<VertexSet>,
}

/// Result of a minimum l-degree scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinDegree {
    pub value: u64,
    /// Lexicographically smallest l-set attaining `value`.
    pub witness: VertexSet,
}

impl Hypergraph {
    /// Builds a hypergraph, rejecting malformed or repeated edges.
    pub fn new(k: usize, n: usize, edges: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        if k == 0 {
            return invalid("uniformity must be at least 1");
        }
        if n > MAX_VERTICES {
            return Err(Error::UnsupportedSize(format!(
                "{n} vertices exceeds the limit of {MAX_VERTICES}"
            )));
        }
        let full = VertexSet::full(n);
        let mut list = Vec::new();
        let mut lookup = HashSet::new();
        for e in edges {
            if e.len() != k {
                return invalid(format!("edge {e} does not have {k} vertices"));
            }
            if !e.is_subset(full) {
                return invalid(format!("edge {e} has a vertex outside 0..{n}"));
            }
            if !lookup.insert(e) {
                return invalid(format!("duplicate edge {e}"));
            }
            list.push(e);
        }
        list.sort_unstable();
        Ok(Hypergraph {
            k,
            n,
            edges: list,
            lookup,
        })
    }

    /// Convenience constructor from vertex lists.
    pub fn from_lists(k: usize, n: usize, edges: &[&[usize]]) -> Result<Self> {
        Self::new(k, n, edges.iter().map(|e| VertexSet::from_slice(e)))
    }

    /// Keeps the first occurrence of each edge instead of rejecting repeats.
    pub(crate) fn from_unique_unchecked(k: usize, n: usize, mut edges: Vec<VertexSet>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        debug_assert!(edges.iter().all(|e| e.len() == k && e.is_subset(VertexSet::full(n))));
        let lookup = edges.iter().copied().collect();
        Hypergraph {
            k,
            n,
            edges,
            lookup,
        }
    }

    /// `K_n^k`.
    pub fn complete(n: usize, k: usize) -> Result<Self> {
        if k == 0 || n > MAX_VERTICES {
            return invalid(format!("cannot build K_{n}^{k}"));
        }
        Ok(Self::from_unique_unchecked(k, n, Combinations::of_range(n, k).collect()))
    }

    pub fn edgeless(n: usize, k: usize) -> Result<Self> {
        Self::new(k, n, std::iter::empty())
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order.
    #[inline]
    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    #[inline]
    pub fn has_edge(&self, e: VertexSet) -> bool {
        self.lookup.contains(&e)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    fn check_subset(&self, t: VertexSet) -> Result<()> {
        if !t.is_subset(self.vertices()) {
            return invalid(format!("{t} is not a subset of 0..{}", self.n));
        }
        Ok(())
    }

    /// Number of `(k - |T|)`-sets `S` disjoint from `T` with `S ∪ T` an edge.
    pub fn degree(&self, t: VertexSet) -> Result<u64> {
        if t.len() > self.k {
            return invalid(format!("|T| = {} exceeds k = {}", t.len(), self.k));
        }
        self.check_subset(t)?;
        Ok(self.edges.iter().filter(|e| t.is_subset(**e)).count() as u64)
    }

    /// Degree of every vertex.
    pub fn vertex_degrees(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.n];
        for e in &self.edges {
            for v in e.iter() {
                deg[v] += 1;
            }
        }
        deg
    }

    /// The link graph `N(T)`: a `(k - |T|)`-graph on the same vertex labels.
    pub fn link(&self, t: VertexSet) -> Result<Hypergraph> {
        if t.len() >= self.k {
            return invalid(format!("|T| = {} must be below k = {}", t.len(), self.k));
        }
        self.check_subset(t)?;
        let edges = self
            .edges
            .iter()
            .filter(|e| t.is_subset(**e))
            .map(|e| e.difference(t))
            .collect();
        Ok(Self::from_unique_unchecked(self.k - t.len(), self.n, edges))
    }

    /// Degrees of all l-sets, keyed by colex rank when the table is small enough.
    fn degree_counts(&self, l: usize) -> DegreeCounts {
        let total = binomial(self.n as u64, l as u64);
        let mut counts = if total <= 1 << 24 {
            DegreeCounts::Dense(vec![0; total as usize])
        } else {
            DegreeCounts::Sparse(HashMap::new())
        };
        for e in &self.edges {
            for t in Combinations::new(*e, l) {
                counts.bump(t);
            }
        }
        counts
    }

    /// Minimum l-degree with the lexicographically smallest witness.
    ///
    /// `l = 0` gives the edge count with the empty set as witness.
    pub fn min_l_degree(&self, l: usize) -> Result<MinDegree> {
        if l >= self.k {
            return invalid(format!("l = {l} must be below k = {}", self.k));
        }
        if l > self.n {
            return invalid(format!("l = {l} exceeds n = {}", self.n));
        }
        let counts = self.degree_counts(l);
        let mut best: Option<MinDegree> = None;
        for t in Combinations::of_range(self.n, l) {
            let d = counts.get(t);
            if best.is_none_or(|b| d < b.value) {
                best = Some(MinDegree { value: d, witness: t });
                if d == 0 {
                    break;
                }
            }
        }
        Ok(best.expect("at least one l-set exists when l <= n"))
    }

    /// `(l-set, degree)` for every l-set, in lexicographic order.
    pub fn l_degrees(&self, l: usize) -> Result<Vec<(VertexSet, u64)>> {
        if l > self.k || l > self.n {
            return invalid(format!("l = {l} out of range"));
        }
        let counts = self.degree_counts(l);
        Ok(Combinations::of_range(self.n, l)
            .map(|t| (t, counts.get(t)))
            .collect())
    }

    /// Induced subgraph on `s`, relabelled to `0..|s|` preserving order.
    pub fn induced(&self, s: VertexSet) -> Result<Hypergraph> {
        self.check_subset(s)?;
        let mut relabel = vec![usize::MAX; self.n];
        for (i, v) in s.iter().enumerate() {
            relabel[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.is_subset(s))
            .map(|e| e.map(&relabel))
            .collect();
        Ok(Self::from_unique_unchecked(self.k, s.len(), edges))
    }

    /// Relabels vertices by `perm` (a permutation of `0..n`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Hypergraph> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n || perm.iter().any(|&p| p >= self.n || std::mem::replace(&mut seen[p], true)) {
            return invalid("relabelling is not a permutation");
        }
        let edges = self.edges.iter().map(|e| e.map(perm)).collect();
        Ok(Self::from_unique_unchecked(self.k, self.n, edges))
    }

    /// Drops vertices lying in no edge, compacting the labels.
    pub fn without_isolated(&self) -> Hypergraph {
        let used = self.edges.iter().fold(VertexSet::EMPTY, |acc, e| acc.union(*e));
        self.induced(used).expect("used vertices are in range")
    }

    /// `s`-blow-up: vertex `i` becomes `{i*s, ..., i*s + s - 1}` and every
    /// edge becomes all of its transversals.
    pub fn blow_up(&self, s: usize) -> Result<Hypergraph> {
        if s < 1 {
            return invalid("blow-up factor must be at least 1");
        }
        let n = self.n * s;
        if n > MAX_VERTICES {
            return Err(Error::UnsupportedSize(format!("blow-up has {n} vertices")));
        }
        let mut edges = Vec::new();
        for e in &self.edges {
            let parts = e.to_vec();
            let mut choice = vec![0usize; parts.len()];
            loop {
                edges.push(parts.iter().zip(&choice).map(|(&v, &c)| v * s + c).collect());
                let mut i = 0;
                while i < choice.len() {
                    choice[i] += 1;
                    if choice[i] < s {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == choice.len() {
                    break;
                }
            }
        }
        Ok(Self::from_unique_unchecked(self.k, n, edges))
    }

    /// Complement within `K_n^k`.
    pub fn complement(&self) -> Hypergraph {
        let edges = Combinations::of_range(self.n, self.k)
            .filter(|e| !self.has_edge(*e))
            .collect();
        Self::from_unique_unchecked(self.k, self.n, edges)
    }
}

enum DegreeCounts {
    Dense(Vec<u64>),
    Sparse(HashMap<VertexSet, u64>),
}

impl DegreeCounts {
    fn bump(&mut self, t: VertexSet) {
        match self {
            DegreeCounts::Dense(v) => v[colex_rank(t) as usize] += 1,
            DegreeCounts::Sparse(m) => *m.entry(t).or_default() += 1,
        }
    }

    fn get(&self, t: VertexSet) -> u64 {
        match self {
            DegreeCounts::Dense(v) => v[colex_rank(t) as usize],
            DegreeCounts::Sparse(m) => m.get(&t).copied().unwrap_or(0),
        }
    }
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph")
            .field("k", &self.k)
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}
