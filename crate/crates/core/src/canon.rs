//! Brute-force canonical forms, forbidden families and link families.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::subsets::Combinations;
use crate::vertex_set::VertexSet;

/// Default cap on the order of graphs passed to [`canonical_form`].
pub const DEFAULT_CANON_MAX_ORDER: usize = 10;

/// Default cap on the order of forbidden-family members.
pub const DEFAULT_FAMILY_MAX_ORDER: usize = 12;

/// The lexicographically smallest sorted edge list over all relabellings.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub k: usize,
    pub n: usize,
    pub edges: Vec<VertexSet>,
}

impl CanonicalForm {
    pub fn to_hypergraph(&self) -> Hypergraph {
        Hypergraph::new(self.k, self.n, self.edges.iter().copied()).expect("canonical forms are well formed")
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[k={} n={}]", self.k, self.n)?;
        for e in &self.edges {
            write!(f, " {e}")?;
        }
        Ok(())
    }
}

/// Canonical form with the default order cap.
pub fn canonical_form(graph: &Hypergraph) -> Result<CanonicalForm> {
    canonical_form_capped(graph, DEFAULT_CANON_MAX_ORDER)
}

/// Tries all `n!` relabellings; refuses graphs with more than `max_order` vertices.
pub fn canonical_form_capped(graph: &Hypergraph, max_order: usize) -> Result<CanonicalForm> {
    let n = graph.n();
    if n > max_order {
        return Err(Error::UnsupportedSize(format!(
            "canonical form of a {n}-vertex graph exceeds the cap of {max_order}"
        )));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Vec<VertexSet> = graph.edges().to_vec();
    let mut scratch = Vec::with_capacity(best.len());

    let mut consider = |perm: &[usize], best: &mut Vec<VertexSet>| {
        scratch.clear();
        scratch.extend(graph.edges().iter().map(|e| e.map(perm)));
        scratch.sort_unstable();
        if scratch < *best {
            best.clone_from(&scratch);
        }
    };

    // Heap's algorithm, iterative form.
    consider(&perm, &mut best);
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            consider(&perm, &mut best);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(CanonicalForm {
        k: graph.k(),
        n,
        edges: best,
    })
}

pub fn is_isomorphic(a: &Hypergraph, b: &Hypergraph) -> Result<bool> {
    if a.k() != b.k() || a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// Canonical links of all l-sets of `graph`, isolated vertices removed.
///
/// An l-set with an empty link contributes the 0-vertex edgeless graph.
pub fn link_family(graph: &Hypergraph, l: usize) -> Result<BTreeSet<CanonicalForm>> {
    if l == 0 || l >= graph.k() {
        return invalid(format!("link family needs 0 < l < k, got l = {l}, k = {}", graph.k()));
    }
    let mut out = BTreeSet::new();
    for t in Combinations::of_range(graph.n(), l) {
        let link = graph.link(t)?.without_isolated();
        out.insert(canonical_form(&link)?);
    }
    Ok(out)
}

/// A finite set of pairwise non-isomorphic k-graphs, each stored in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenFamily {
    k: usize,
    members: Vec<Hypergraph>,
    name: Option<String>,
}

impl ForbiddenFamily {
    pub fn new(k: usize, members: impl IntoIterator<Item = Hypergraph>) -> Result<Self> {
        Self::with_limits(k, members, DEFAULT_FAMILY_MAX_ORDER, DEFAULT_CANON_MAX_ORDER)
    }

    pub fn with_limits(
        k: usize,
        members: impl IntoIterator<Item = Hypergraph>,
        max_order: usize,
        canon_max_order: usize,
    ) -> Result<Self> {
        let mut forms = BTreeSet::new();
        for m in members {
            if m.k() != k {
                return invalid(format!("family member is {}-uniform, expected {k}", m.k()));
            }
            if m.n() > max_order {
                return Err(Error::UnsupportedSize(format!(
                    "family member has {} vertices, limit is {max_order}",
                    m.n()
                )));
            }
            forms.insert(canonical_form_capped(&m, canon_max_order)?);
        }
        Ok(ForbiddenFamily {
            k,
            members: forms.iter().map(CanonicalForm::to_hypergraph).collect(),
            name: None,
        })
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn members(&self) -> &[Hypergraph] {
        &self.members
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Union with another family of the same uniformity, deduplicated.
    pub fn merged(&self, other: &ForbiddenFamily) -> Result<Self> {
        let mut fam = ForbiddenFamily::new(self.k, self.members.iter().chain(other.members.iter()).cloned())?;
        fam.name = match (&self.name, &other.name) {
            (Some(a), Some(b)) => Some(format!("{a}+{b}")),
            (a, b) => a.clone().or_else(|| b.clone()),
        };
        Ok(fam)
    }

    /// Union of the l-link families of all members.
    pub fn link_family(&self, l: usize) -> Result<BTreeSet<CanonicalForm>> {
        let mut out = BTreeSet::new();
        for m in &self.members {
            out.extend(link_family(m, l)?);
        }
        Ok(out)
    }
}

/// True iff `host` contains no member of `family`.
pub fn is_family_free(host: &Hypergraph, family: &ForbiddenFamily) -> Result<bool> {
    if host.k() != family.k() {
        return invalid(format!(
            "uniformity mismatch: host is {}-uniform, family is {}-uniform",
            host.k(),
            family.k()
        ));
    }
    for m in family.members() {
        if crate::embed::contains(host, m)? {
            return Ok(false);
        }
    }
    Ok(true)
}
