//! Minimum l-degree Turán problems on k-uniform hypergraphs.
//!
//! The crate provides immutable hypergraph values with degree, link and
//! containment queries, generators for the classical extremal
//! constructions, exact counting helpers, and an exact/heuristic solver
//! for `ex_l(n, F)`: the largest minimum l-degree of an `F`-free k-graph
//! on `n` vertices.

pub mod canon;
pub mod cli;
pub mod combinatorics;
pub mod constructions;
pub mod embed;
pub mod error;
pub mod hypergraph;
pub mod io;
pub mod solver;
pub mod subsets;
pub mod vertex_set;

pub use canon::{canonical_form, is_family_free, link_family, CanonicalForm, ForbiddenFamily};
pub use embed::{contains, count_copies};
pub use error::{Error, Result};
pub use hypergraph::{Hypergraph, MinDegree};
pub use vertex_set::VertexSet;
