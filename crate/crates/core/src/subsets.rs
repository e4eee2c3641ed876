//! Subset enumeration and small binomial coefficients.

use crate::vertex_set::VertexSet;

/// `C(n, r)` in 64 bits, saturating at `u64::MAX`.
pub fn binomial(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Rank of a set in colexicographic order among sets of the same size:
/// `sum_i C(v_i, i + 1)` over the ascending members `v_0 < v_1 < ...`.
pub fn colex_rank(set: VertexSet) -> u64 {
    set.iter()
        .enumerate()
        .map(|(i, v)| binomial(v as u64, i as u64 + 1))
        .sum()
}

/// All `r`-subsets of `ground`, in lexicographic order.
pub struct Combinations {
    pool: Vec<usize>,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(ground: VertexSet, r: usize) -> Self {
        let pool = ground.to_vec();
        let done = r > pool.len();
        Combinations {
            idx: (0..r).collect(),
            pool,
            done,
        }
    }

    /// `r`-subsets of `{0, ..., n-1}`.
    pub fn of_range(n: usize, r: usize) -> Self {
        Self::new(VertexSet::full(n), r)
    }
}

impl Iterator for Combinations {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.done {
            return None;
        }
        let out: VertexSet = self.idx.iter().map(|&i| self.pool[i]).collect();
        let r = self.idx.len();
        let n = self.pool.len();
        let mut i = r;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] != i + n - r {
                self.idx[i] += 1;
                for j in i + 1..r {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(128, 5), 264_566_400);
        assert_eq!(binomial(200, 100), u64::MAX);
    }

    #[test]
    fn combinations_are_lexicographic_and_complete() {
        let all: Vec<VertexSet> = Combinations::of_range(6, 3).collect();
        assert_eq!(all.len(), 20);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Combinations::of_range(4, 0).count(), 1);
        assert_eq!(Combinations::of_range(2, 3).count(), 0);
    }

    #[test]
    fn colex_rank_is_a_bijection() {
        let mut ranks: Vec<u64> = Combinations::of_range(9, 4).map(colex_rank).collect();
        ranks.sort_unstable();
        assert_eq!(ranks, (0..binomial(9, 4)).collect::<Vec<_>>());
    }
}
