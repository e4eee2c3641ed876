//! Brute-force reference for tiny instances: every subset of the slots is
//! enumerated, pruning only when an inclusion completes a forbidden copy.

use std::collections::HashSet;
use std::ops::ControlFlow;

use super::space::Space;
use crate::canon::ForbiddenFamily;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::vertex_set::VertexSet;

/// Largest slot count the oracle accepts.
pub const ORACLE_MAX_SLOTS: usize = 24;

struct Oracle {
    /// `copies_ending_at[s]`: slot masks of forbidden copies whose largest slot is `s`.
    copies_ending_at: Vec<Vec<u32>>,
    lset_masks: Vec<u32>,
    best: Option<(u32, u32)>,
}

impl Oracle {
    fn min_degree(&self, mask: u32) -> u32 {
        self.lset_masks
            .iter()
            .map(|m| (m & mask).count_ones())
            .min()
            .unwrap_or(0)
    }

    fn walk(&mut self, slot: usize, total: usize, mask: u32) {
        if slot == total {
            let value = self.min_degree(mask);
            if self.best.is_none_or(|(b, _)| value > b) {
                self.best = Some((value, mask));
            }
            return;
        }
        let with = mask | 1 << slot;
        if self.copies_ending_at[slot].iter().all(|c| c & with != *c) {
            self.walk(slot + 1, total, with);
        }
        self.walk(slot + 1, total, mask);
    }
}

/// Returns `ex_l(n, F)` with a witness by exhaustive enumeration.
pub(crate) fn oracle(n: usize, k: usize, l: usize, family: &ForbiddenFamily) -> Result<(u64, Hypergraph)> {
    let space = Space::new(n, k, l);
    let total = space.slots.len();
    if total > ORACLE_MAX_SLOTS {
        return Err(Error::UnsupportedSize(format!(
            "the oracle enumerates at most {ORACLE_MAX_SLOTS} slots, C({n},{k}) = {total}"
        )));
    }
    let host = Hypergraph::complete(n, k)?;
    let mut copies: HashSet<u32> = HashSet::new();
    for member in family.members() {
        crate::embed::for_each_embedding(&host, member, |map| {
            let mask = member
                .edges()
                .iter()
                .map(|e| 1u32 << space.rank(e.map(map)))
                .fold(0, |a, b| a | b);
            copies.insert(mask);
            ControlFlow::Continue(())
        })?;
    }
    let mut copies_ending_at = vec![Vec::new(); total];
    for c in copies {
        if c == 0 {
            // an edgeless member is contained in everything
            return Err(Error::InvalidArgument(
                "the family contains an edgeless graph, so no host is free of it".into(),
            ));
        }
        copies_ending_at[31 - c.leading_zeros() as usize].push(c);
    }
    for list in &mut copies_ending_at {
        list.sort_unstable();
    }
    let lset_masks = space
        .lsets
        .iter()
        .map(|t| {
            space
                .slots
                .iter()
                .enumerate()
                .filter(|(_, s)| t.is_subset(**s))
                .map(|(i, _)| 1u32 << i)
                .fold(0, |a, b| a | b)
        })
        .collect();
    let mut o = Oracle {
        copies_ending_at,
        lset_masks,
        best: None,
    };
    o.walk(0, total, 0);
    let (value, mask) = o.best.expect("the empty graph is always free");
    let edges: Vec<VertexSet> = (0..total).filter(|i| mask >> i & 1 == 1).map(|i| space.slots[i]).collect();
    Ok((value as u64, Hypergraph::new(k, n, edges)?))
}
