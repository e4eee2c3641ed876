//! Subgraph containment and copy counting by backtracking over injections.

use std::ops::ControlFlow;

use crate::error::{invalid, Result};
use crate::hypergraph::Hypergraph;
use crate::vertex_set::VertexSet;

/// Search plan for embedding a fixed pattern: a vertex order and, for each
/// position, the pattern edges that become fully mapped at that point.
struct Plan {
    order: Vec<usize>,
    checks: Vec<Vec<VertexSet>>,
    pattern_degree: Vec<u64>,
}

impl Plan {
    fn new(pattern: &Hypergraph) -> Plan {
        let n = pattern.n();
        let degree = pattern.vertex_degrees();
        let mut placed = VertexSet::EMPTY;
        let mut order = Vec::with_capacity(n);
        // Greedy: prefer vertices closing the most edges, then the most
        // edges touching placed vertices, then high degree.
        while order.len() < n {
            let v = (0..n)
                .filter(|v| !placed.contains(*v))
                .max_by_key(|&v| {
                    let with = placed.with(v);
                    let closes = pattern.edges().iter().filter(|e| e.contains(v) && e.is_subset(with)).count();
                    let touches = pattern
                        .edges()
                        .iter()
                        .filter(|e| e.contains(v) && !e.is_disjoint(placed))
                        .count();
                    (closes, touches, degree[v], std::cmp::Reverse(v))
                })
                .unwrap();
            placed.insert(v);
            order.push(v);
        }
        let mut checks = vec![Vec::new(); n];
        let mut prefix = VertexSet::EMPTY;
        for (i, &v) in order.iter().enumerate() {
            prefix.insert(v);
            checks[i] = pattern
                .edges()
                .iter()
                .copied()
                .filter(|e| e.contains(v) && e.is_subset(prefix))
                .collect();
        }
        Plan {
            order,
            checks,
            pattern_degree: degree,
        }
    }
}

struct Search<'a, F> {
    host: &'a Hypergraph,
    plan: &'a Plan,
    host_degree: Vec<u64>,
    map: Vec<usize>,
    used: VertexSet,
    visit: F,
}

impl<F: FnMut(&[usize]) -> ControlFlow<()>> Search<'_, F> {
    fn run(&mut self, pos: usize) -> ControlFlow<()> {
        if pos == self.plan.order.len() {
            return (self.visit)(&self.map);
        }
        let v = self.plan.order[pos];
        let need = self.plan.pattern_degree[v];
        for w in self.host.vertices().difference(self.used).iter() {
            if self.host_degree[w] < need {
                continue;
            }
            self.map[v] = w;
            let ok = self.plan.checks[pos]
                .iter()
                .all(|e| self.host.has_edge(e.map(&self.map)));
            if ok {
                self.used.insert(w);
                let flow = self.run(pos + 1);
                self.used = self.used.without(w);
                flow?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Calls `visit` with every edge-preserving injection `V(pattern) -> V(host)`
/// (as a lookup table indexed by pattern vertex) until it breaks.
pub fn for_each_embedding(
    host: &Hypergraph,
    pattern: &Hypergraph,
    visit: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<()> {
    if host.k() != pattern.k() {
        return invalid(format!(
            "uniformity mismatch: host is {}-uniform, pattern is {}-uniform",
            host.k(),
            pattern.k()
        ));
    }
    if pattern.n() > host.n() {
        return Ok(());
    }
    let plan = Plan::new(pattern);
    let mut search = Search {
        host,
        plan: &plan,
        host_degree: host.vertex_degrees(),
        map: vec![usize::MAX; pattern.n()],
        used: VertexSet::EMPTY,
        visit,
    };
    let _ = search.run(0);
    Ok(())
}

/// Whether `host` contains a (not necessarily induced) copy of `pattern`.
pub fn contains(host: &Hypergraph, pattern: &Hypergraph) -> Result<bool> {
    let mut found = false;
    for_each_embedding(host, pattern, |_| {
        found = true;
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// Number of edge-preserving injections `V(pattern) -> V(host)`.
pub fn count_embeddings(host: &Hypergraph, pattern: &Hypergraph) -> Result<u64> {
    let mut count = 0u64;
    for_each_embedding(host, pattern, |_| {
        count += 1;
        ControlFlow::Continue(())
    })?;
    Ok(count)
}

/// `|Aut(F)|`.
pub fn automorphism_count(pattern: &Hypergraph) -> u64 {
    count_embeddings(pattern, pattern).expect("same uniformity")
}

/// Number of unlabelled copies of `pattern` in `host`.
pub fn count_copies(host: &Hypergraph, pattern: &Hypergraph) -> Result<u64> {
    let injections = count_embeddings(host, pattern)?;
    Ok(injections / automorphism_count(pattern))
}
