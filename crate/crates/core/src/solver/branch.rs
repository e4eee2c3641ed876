//! Branch-and-bound for "is there an F-free k-graph on [n] with δ_l ≥ d".
//!
//! Slots are decided in colex order, include before exclude. Pruning uses
//! the incremental family check, per-l-set degree slack, and lex-leader
//! constraints for vertex transpositions (the assignment must be
//! lexicographically at least its image under every transposition).

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use super::matcher::Matcher;
use super::space::Space;
use crate::vertex_set::VertexSet;

const UNDECIDED: i8 = -1;
const FLUSH_EVERY: u64 = 1024;

pub(crate) struct Limits {
    pub deadline: Option<Instant>,
    pub node_budget: Option<u64>,
}

pub(crate) enum Decision {
    Sat(Vec<VertexSet>),
    Unsat,
    Exhausted,
}

struct Symmetry {
    perm: Vec<u32>,
    moved: Vec<u32>,
}

struct Shared<'a> {
    space: &'a Space,
    matcher: &'a Matcher,
    d: u32,
    symmetries: Vec<Symmetry>,
    limits: &'a Limits,
    nodes: AtomicU64,
    stop: AtomicBool,
}

impl Shared<'_> {
    fn exhausted(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return true;
        }
        let over_nodes = self
            .limits
            .node_budget
            .is_some_and(|b| self.nodes.load(Ordering::Relaxed) >= b);
        let over_time = self.limits.deadline.is_some_and(|t| Instant::now() >= t);
        if over_nodes || over_time {
            self.stop.store(true, Ordering::Relaxed);
        }
        over_nodes || over_time
    }
}

enum Flow {
    Done,
    Found,
    Exhausted,
}

struct Search<'s, 'a> {
    shared: &'s Shared<'a>,
    x: Vec<i8>,
    deg: Vec<u32>,
    open: Vec<u32>,
    local_nodes: u64,
}

impl<'s, 'a> Search<'s, 'a> {
    fn new(shared: &'s Shared<'a>) -> Self {
        let space = shared.space;
        let open = space.max_degree() as u32;
        Search {
            shared,
            x: vec![UNDECIDED; space.slots.len()],
            deg: vec![0; space.lsets.len()],
            open: vec![open; space.lsets.len()],
            local_nodes: 0,
        }
    }

    /// Records decision `value` at `pos`; returns whether the state is still consistent.
    fn apply(&mut self, pos: usize, value: i8) -> bool {
        let space = self.shared.space;
        self.x[pos] = value;
        let mut ok = true;
        for &t in &space.slot_lsets[pos] {
            let t = t as usize;
            self.open[t] -= 1;
            if value == 1 {
                self.deg[t] += 1;
            } else if self.deg[t] + self.open[t] < self.shared.d {
                ok = false;
            }
        }
        if !ok {
            return false;
        }
        if value == 1 && !self.shared.matcher.is_empty() {
            let x = &self.x;
            let is_edge = |s: VertexSet| x[space.rank(s)] == 1;
            if self.shared.matcher.creates_copy(space.n, space.slots[pos], &is_edge) {
                return false;
            }
        }
        self.lex_leader_ok(pos)
    }

    fn undo(&mut self, pos: usize) {
        let value = self.x[pos];
        for &t in &self.shared.space.slot_lsets[pos] {
            let t = t as usize;
            self.open[t] += 1;
            if value == 1 {
                self.deg[t] -= 1;
            }
        }
        self.x[pos] = UNDECIDED;
    }

    fn lex_leader_ok(&self, pos: usize) -> bool {
        for sym in &self.shared.symmetries {
            for &i in &sym.moved {
                let i = i as usize;
                let j = sym.perm[i] as usize;
                if i > pos || j > pos {
                    break;
                }
                let (a, b) = (self.x[i], self.x[j]);
                if a > b {
                    break;
                }
                if a < b {
                    return false;
                }
            }
        }
        true
    }

    /// Counts one node; false once a budget is spent.
    fn tick(&mut self) -> bool {
        if let Some(budget) = self.shared.limits.node_budget {
            let seen = self.shared.nodes.load(Ordering::Relaxed) + self.local_nodes % FLUSH_EVERY;
            if seen >= budget {
                self.shared.stop.store(true, Ordering::Relaxed);
                return false;
            }
        }
        self.local_nodes += 1;
        if self.local_nodes.is_multiple_of(FLUSH_EVERY) {
            self.shared.nodes.fetch_add(FLUSH_EVERY, Ordering::Relaxed);
            return !self.shared.exhausted();
        }
        true
    }

    fn flush(&mut self) {
        self.shared
            .nodes
            .fetch_add(self.local_nodes % FLUSH_EVERY, Ordering::Relaxed);
        self.local_nodes = 0;
    }

    /// Depth-first search over positions `from..to`, calling `leaf` on every
    /// consistent assignment of the range.
    fn dfs(&mut self, from: usize, to: usize, leaf: &mut dyn FnMut(&[i8]) -> ControlFlow<()>) -> Flow {
        if from == to {
            return match leaf(&self.x) {
                ControlFlow::Break(()) => Flow::Found,
                ControlFlow::Continue(()) => Flow::Done,
            };
        }
        // state[pos]: 0 = untried, 1 = include applied, 2 = exclude applied
        let mut state = vec![0u8; to - from];
        let mut pos = from;
        loop {
            let idx = pos - from;
            if state[idx] != 0 {
                self.undo(pos);
            }
            let value = match state[idx] {
                0 => 1i8,
                1 => 0i8,
                _ => {
                    state[idx] = 0;
                    if pos == from {
                        return Flow::Done;
                    }
                    pos -= 1;
                    continue;
                }
            };
            state[idx] += 1;
            if !self.tick() {
                for p in (from..pos).rev() {
                    self.undo(p);
                }
                return Flow::Exhausted;
            }
            if self.apply(pos, value) {
                if pos + 1 == to {
                    if leaf(&self.x).is_break() {
                        return Flow::Found;
                    }
                } else {
                    pos += 1;
                }
            }
        }
    }
}

fn transpositions(space: &Space) -> Vec<Symmetry> {
    let mut out = Vec::new();
    for a in 0..space.n {
        for b in a + 1..space.n {
            let mut swap: Vec<usize> = (0..space.n).collect();
            swap.swap(a, b);
            let perm: Vec<u32> = space
                .slots
                .iter()
                .map(|s| space.rank(s.map(&swap)) as u32)
                .collect();
            let moved = (0..perm.len() as u32).filter(|&i| perm[i as usize] != i).collect();
            out.push(Symmetry { perm, moved });
        }
    }
    out
}

/// Runs the decision search. Returns the outcome and the number of nodes visited.
pub(crate) fn decide(
    space: &Space,
    matcher: &Matcher,
    d: u64,
    symmetry_breaking: bool,
    workers: usize,
    limits: &Limits,
) -> (Decision, u64) {
    if d == 0 {
        return (Decision::Sat(Vec::new()), 0);
    }
    if d > space.max_degree() {
        return (Decision::Unsat, 0);
    }
    let shared = Shared {
        space,
        matcher,
        d: d as u32,
        symmetries: if symmetry_breaking { transpositions(space) } else { Vec::new() },
        limits,
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
    };
    let total = space.slots.len();
    let (prefix_len, prefixes) = split(&shared, total, workers);
    let prefixes = match prefixes {
        Some(p) => p,
        None => return (Decision::Exhausted, shared.nodes.load(Ordering::Relaxed)),
    };

    let next_job = AtomicUsize::new(0);
    let best: Mutex<Option<(usize, Vec<VertexSet>)>> = Mutex::new(None);
    let best_index = AtomicUsize::new(usize::MAX);
    let run_worker = || {
        loop {
            let job = next_job.fetch_add(1, Ordering::Relaxed);
            if job >= prefixes.len() || job > best_index.load(Ordering::Relaxed) || shared.stop.load(Ordering::Relaxed) {
                break;
            }
            let mut search = Search::new(&shared);
            for (pos, &value) in prefixes[job].iter().enumerate() {
                let ok = search.apply(pos, value);
                debug_assert!(ok, "prefixes are consistent");
            }
            let mut witness = None;
            let flow = search.dfs(prefix_len, total, &mut |x| {
                witness = Some(edges_of(space, x));
                ControlFlow::Break(())
            });
            search.flush();
            if let (Flow::Found, Some(w)) = (flow, witness) {
                let mut guard = best.lock().expect("no poisoning");
                if guard.as_ref().is_none_or(|(i, _)| job < *i) {
                    *guard = Some((job, w));
                    best_index.fetch_min(job, Ordering::Relaxed);
                }
            }
        }
    };
    if workers <= 1 {
        run_worker();
    } else {
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(run_worker);
            }
        });
    }
    let nodes = shared.nodes.load(Ordering::Relaxed);
    if let Some((_, w)) = best.into_inner().expect("no poisoning") {
        return (Decision::Sat(w), nodes);
    }
    if shared.stop.load(Ordering::Relaxed) {
        (Decision::Exhausted, nodes)
    } else {
        (Decision::Unsat, nodes)
    }
}

fn edges_of(space: &Space, x: &[i8]) -> Vec<VertexSet> {
    x.iter()
        .enumerate()
        .filter(|(_, &v)| v == 1)
        .map(|(i, _)| space.slots[i])
        .collect()
}

/// Splits the search into prefix jobs listed in depth-first order. One
/// worker gets a single empty prefix. `None` means the budget ran out while
/// splitting.
fn split(shared: &Shared, total: usize, workers: usize) -> (usize, Option<Vec<Vec<i8>>>) {
    if workers <= 1 {
        return (0, Some(vec![Vec::new()]));
    }
    let wanted = 8 * workers;
    let mut depth = 1.min(total);
    loop {
        let mut prefixes = Vec::new();
        let mut search = Search::new(shared);
        let flow = search.dfs(0, depth, &mut |x| {
            prefixes.push(x[..depth].to_vec());
            ControlFlow::Continue(())
        });
        search.flush();
        if let Flow::Exhausted = flow {
            return (depth, None);
        }
        if prefixes.len() >= wanted || depth == total || prefixes.is_empty() {
            return (depth, Some(prefixes));
        }
        depth = (depth + 4).min(total);
    }
}
