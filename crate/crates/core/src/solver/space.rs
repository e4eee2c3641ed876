use crate::subsets::Combinations;
use crate::vertex_set::VertexSet;

/// Solver vertex limit: vertex sets fit in one machine word.
pub const SOLVER_MAX_VERTICES: usize = 64;

/// Index structures shared by the searches: every k-set ("slot") and every
/// l-set, numbered by colex rank, plus the l-sets inside each slot.
pub(crate) struct Space {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub slots: Vec<VertexSet>,
    pub lsets: Vec<VertexSet>,
    /// `slot_lsets[s]` lists the ranks of the l-sets inside slot `s`.
    pub slot_lsets: Vec<Vec<u32>>,
    binom: Vec<Vec<usize>>,
}

impl Space {
    pub fn new(n: usize, k: usize, l: usize) -> Space {
        let mut binom = vec![vec![0usize; k + 2]; n + 1];
        for (v, row) in binom.iter_mut().enumerate() {
            row[0] = 1;
            for (i, cell) in row.iter_mut().enumerate().skip(1) {
                *cell = crate::subsets::binomial(v as u64, i as u64) as usize;
            }
        }
        let mut space = Space {
            n,
            k,
            l,
            slots: Vec::new(),
            lsets: Vec::new(),
            slot_lsets: Vec::new(),
            binom,
        };
        let mut slots: Vec<VertexSet> = Combinations::of_range(n, k).collect();
        slots.sort_by_key(|s| space.rank(*s));
        let mut lsets: Vec<VertexSet> = Combinations::of_range(n, l).collect();
        lsets.sort_by_key(|s| space.rank(*s));
        space.slot_lsets = slots
            .iter()
            .map(|s| Combinations::new(*s, l).map(|t| space.rank(t) as u32).collect())
            .collect();
        space.slots = slots;
        space.lsets = lsets;
        space
    }

    /// Colex rank of a set among sets of the same size.
    #[inline]
    pub fn rank(&self, set: VertexSet) -> usize {
        set.iter().enumerate().map(|(i, v)| self.binom[v][i + 1]).sum()
    }

    /// Largest possible l-degree: `C(n - l, k - l)`.
    pub fn max_degree(&self) -> u64 {
        crate::subsets::binomial((self.n - self.l) as u64, (self.k - self.l) as u64)
    }
}
