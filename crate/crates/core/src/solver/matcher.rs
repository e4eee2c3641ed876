//! Incremental family containment: copies of a pattern through one new edge.

use std::ops::ControlFlow;

use crate::canon::ForbiddenFamily;
use crate::hypergraph::Hypergraph;
use crate::vertex_set::VertexSet;

/// One way to anchor a pattern edge onto the new host edge, followed by a
/// plan for placing the remaining pattern vertices.
struct Start {
    /// `anchor[i]` is the pattern vertex sent to the i-th smallest vertex of the new edge.
    anchor: Vec<usize>,
    order: Vec<usize>,
    /// Pattern edges completed when `order[i]` is placed.
    checks: Vec<Vec<VertexSet>>,
}

struct MemberPlan {
    n: usize,
    edges: Vec<VertexSet>,
    starts: Vec<Start>,
}

pub(crate) struct Matcher {
    members: Vec<MemberPlan>,
}

fn automorphisms(f: &Hypergraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    crate::embed::for_each_embedding(f, f, |map| {
        out.push(map.to_vec());
        ControlFlow::Continue(())
    })
    .expect("same uniformity");
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

impl MemberPlan {
    fn new(f: &Hypergraph) -> MemberPlan {
        let auts = automorphisms(f);
        let mut starts = Vec::new();
        for &edge in f.edges() {
            // one representative edge per automorphism orbit
            let orbit_min = auts.iter().map(|a| edge.map(a)).min().expect("identity");
            if orbit_min != edge {
                continue;
            }
            let stabiliser: Vec<&Vec<usize>> = auts.iter().filter(|a| edge.map(a) == edge).collect();
            for anchor in permutations(&edge.to_vec()) {
                // one representative bijection per stabiliser orbit
                let canonical = stabiliser
                    .iter()
                    .map(|a| anchor.iter().map(|&v| a[v]).collect::<Vec<_>>())
                    .min()
                    .expect("identity");
                if canonical != anchor {
                    continue;
                }
                starts.push(Self::plan(f, edge, anchor));
            }
        }
        MemberPlan {
            n: f.n(),
            edges: f.edges().to_vec(),
            starts,
        }
    }

    fn plan(f: &Hypergraph, edge: VertexSet, anchor: Vec<usize>) -> Start {
        let mut placed = edge;
        let mut order = Vec::new();
        let mut checks = Vec::new();
        while placed.len() < f.n() {
            let v = (0..f.n())
                .filter(|v| !placed.contains(*v))
                .max_by_key(|&v| {
                    let with = placed.with(v);
                    let closes = f.edges().iter().filter(|e| e.contains(v) && e.is_subset(with)).count();
                    let touches = f.edges().iter().filter(|e| e.contains(v) && !e.is_disjoint(placed)).count();
                    (closes, touches, std::cmp::Reverse(v))
                })
                .expect("unplaced vertex");
            placed.insert(v);
            order.push(v);
            checks.push(
                f.edges()
                    .iter()
                    .copied()
                    .filter(|e| e.contains(v) && e.is_subset(placed))
                    .collect(),
            );
        }
        Start { anchor, order, checks }
    }
}

impl Matcher {
    pub fn new(family: &ForbiddenFamily) -> Matcher {
        Matcher {
            members: family.members().iter().map(MemberPlan::new).collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Visits the edge list of every copy of a family member that uses
    /// `new_edge`, given the edge oracle `is_edge` for the rest of the host.
    /// Copies may be visited more than once.
    pub fn for_each_copy_through(
        &self,
        n: usize,
        new_edge: VertexSet,
        is_edge: &dyn Fn(VertexSet) -> bool,
        visit: &mut dyn FnMut(&[VertexSet]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let host = VertexSet::full(n);
        let new_members = new_edge.to_vec();
        for member in &self.members {
            if member.n > n {
                continue;
            }
            let mut map = vec![usize::MAX; member.n];
            for start in &member.starts {
                for (i, &v) in start.anchor.iter().enumerate() {
                    map[v] = new_members[i];
                }
                extend(member, start, 0, &mut map, new_edge, host, new_edge, is_edge, visit)?;
            }
        }
        ControlFlow::Continue(())
    }

    /// Whether adding `new_edge` would complete a copy of some member.
    pub fn creates_copy(&self, n: usize, new_edge: VertexSet, is_edge: &dyn Fn(VertexSet) -> bool) -> bool {
        self.for_each_copy_through(n, new_edge, is_edge, &mut |_| ControlFlow::Break(()))
            .is_break()
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    member: &MemberPlan,
    start: &Start,
    depth: usize,
    map: &mut [usize],
    used: VertexSet,
    host: VertexSet,
    new_edge: VertexSet,
    is_edge: &dyn Fn(VertexSet) -> bool,
    visit: &mut dyn FnMut(&[VertexSet]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if depth == start.order.len() {
        let image: Vec<VertexSet> = member.edges.iter().map(|e| e.map(map)).collect();
        return visit(&image);
    }
    let v = start.order[depth];
    for w in host.difference(used).iter() {
        map[v] = w;
        let ok = start.checks[depth].iter().all(|e| {
            let img = e.map(map);
            img == new_edge || is_edge(img)
        });
        if ok {
            extend(member, start, depth + 1, map, used.with(w), host, new_edge, is_edge, visit)?;
        }
    }
    map[v] = usize::MAX;
    ControlFlow::Continue(())
}
