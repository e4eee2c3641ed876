//! Simulated annealing for lower bounds on `ex_l(n, F)`.
//!
//! The state is always F-free. A move adds a slot through an l-set whose
//! degree is below the target and then breaks every forbidden copy it closed
//! by deleting one other edge of that copy. Energy is the total degree
//! deficit `Σ max(0, target - deg(T))` with `target = best δ + 1`.

use std::ops::ControlFlow;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matcher::Matcher;
use super::space::Space;
use crate::vertex_set::VertexSet;

const START_TEMPERATURE: f64 = 1.5;
const END_TEMPERATURE: f64 = 0.02;
const MAX_REPAIRS: usize = 64;

/// Best state seen by one restart.
#[derive(Clone, Debug)]
pub(crate) struct Found {
    pub value: u64,
    /// Number of l-sets attaining the minimum in the witness.
    pub at_minimum: u64,
    pub edges: Vec<VertexSet>,
}

impl Found {
    /// Higher value first, then fewer l-sets at the minimum, then the lexicographically smaller witness.
    pub fn better_than(&self, other: &Found) -> bool {
        use std::cmp::Reverse;
        (self.value, Reverse(self.at_minimum), Reverse(&self.edges))
            > (other.value, Reverse(other.at_minimum), Reverse(&other.edges))
    }
}

struct Annealer<'a> {
    space: &'a Space,
    matcher: &'a Matcher,
    rng: ChaCha8Rng,
    present: Vec<bool>,
    edge_list: Vec<u32>,
    /// Index of each present slot in `edge_list`.
    position: Vec<u32>,
    deg: Vec<u32>,
    target: u32,
    energy: i64,
}

impl<'a> Annealer<'a> {
    fn new(space: &'a Space, matcher: &'a Matcher, seed: u64) -> Self {
        Annealer {
            space,
            matcher,
            rng: ChaCha8Rng::seed_from_u64(seed),
            present: vec![false; space.slots.len()],
            edge_list: Vec::new(),
            position: vec![u32::MAX; space.slots.len()],
            deg: vec![0; space.lsets.len()],
            target: 1,
            energy: space.lsets.len() as i64,
        }
    }

    fn add(&mut self, slot: usize) {
        self.present[slot] = true;
        self.position[slot] = self.edge_list.len() as u32;
        self.edge_list.push(slot as u32);
        for &t in &self.space.slot_lsets[slot] {
            let d = &mut self.deg[t as usize];
            if *d < self.target {
                self.energy -= 1;
            }
            *d += 1;
        }
    }

    fn remove(&mut self, slot: usize) {
        self.present[slot] = false;
        let at = self.position[slot] as usize;
        let last = *self.edge_list.last().expect("slot is present");
        self.edge_list.swap_remove(at);
        if last as usize != slot {
            self.position[last as usize] = at as u32;
        }
        self.position[slot] = u32::MAX;
        for &t in &self.space.slot_lsets[slot] {
            let d = &mut self.deg[t as usize];
            *d -= 1;
            if *d < self.target {
                self.energy += 1;
            }
        }
    }

    fn set_target(&mut self, target: u32) {
        self.target = target;
        self.energy = self.deg.iter().map(|&d| target.saturating_sub(d) as i64).sum();
    }

    fn snapshot(&self) -> Found {
        let value = self.deg.iter().copied().min().unwrap_or(0);
        let mut edges: Vec<VertexSet> = self.edge_list.iter().map(|&s| self.space.slots[s as usize]).collect();
        edges.sort();
        Found {
            value: value as u64,
            at_minimum: self.deg.iter().filter(|&&d| d == value).count() as u64,
            edges,
        }
    }

    /// First forbidden copy through `slot` as a list of slots other than `slot`.
    fn copy_through(&self, slot: usize) -> Option<Vec<usize>> {
        let space = self.space;
        let present = &self.present;
        let mut found = None;
        let new_edge = space.slots[slot];
        let _ = self.matcher.for_each_copy_through(
            space.n,
            new_edge,
            &|s| present[space.rank(s)],
            &mut |image| {
                found = Some(
                    image
                        .iter()
                        .filter(|e| **e != new_edge)
                        .map(|e| space.rank(*e))
                        .collect(),
                );
                ControlFlow::Break(())
            },
        );
        found
    }

    fn random_slot_through(&mut self, t: VertexSet) -> usize {
        let mut s = t;
        while s.len() < self.space.k {
            let v = self.rng.gen_range(0..self.space.n);
            s.insert(v);
        }
        self.space.rank(s)
    }

    fn deficient_lset(&mut self) -> Option<VertexSet> {
        for _ in 0..32 {
            let t = self.rng.gen_range(0..self.deg.len());
            if self.deg[t] < self.target {
                return Some(self.space.lsets[t]);
            }
        }
        self.deg
            .iter()
            .position(|&d| d < self.target)
            .map(|t| self.space.lsets[t])
    }

    /// Adds `slot` and deletes edges until no forbidden copy remains.
    /// Returns the deleted slots, or `None` (with the state restored) when
    /// the repair did not converge.
    fn add_with_repair(&mut self, slot: usize) -> Option<Vec<usize>> {
        self.add(slot);
        let mut removed = Vec::new();
        while let Some(copy) = self.copy_through(slot) {
            if copy.is_empty() || removed.len() == MAX_REPAIRS {
                self.undo(slot, &removed);
                return None;
            }
            let victim = copy[self.rng.gen_range(0..copy.len())];
            self.remove(victim);
            removed.push(victim);
        }
        Some(removed)
    }

    fn undo(&mut self, added: usize, removed: &[usize]) {
        self.remove(added);
        for &r in removed.iter().rev() {
            self.add(r);
        }
    }

    fn greedy_fill(&mut self) {
        let mut order: Vec<usize> = (0..self.space.slots.len()).collect();
        for i in (1..order.len()).rev() {
            let j = self.rng.gen_range(0..=i);
            order.swap(i, j);
        }
        for slot in order {
            if self.copy_through(slot).is_none() {
                self.add(slot);
            }
        }
    }

    fn run(mut self, iterations: u64, deadline: Option<Instant>, cap: u64) -> Found {
        self.greedy_fill();
        let mut best = self.snapshot();
        self.set_target(best.value as u32 + 1);
        let cooling = (END_TEMPERATURE / START_TEMPERATURE).powf(1.0 / iterations.max(1) as f64);
        let mut temperature = START_TEMPERATURE;
        for it in 0..iterations {
            if best.value >= cap {
                break;
            }
            if it % 1024 == 0 && deadline.is_some_and(|d| Instant::now() >= d) {
                break;
            }
            temperature *= cooling;
            let before = self.energy;
            let (slot, removed) = if self.edge_list.is_empty() || self.rng.gen_bool(0.9) {
                let Some(t) = self.deficient_lset() else { continue };
                let slot = self.random_slot_through(t);
                if self.present[slot] {
                    continue;
                }
                match self.add_with_repair(slot) {
                    Some(r) => (Some(slot), r),
                    None => continue,
                }
            } else {
                let victim = self.edge_list[self.rng.gen_range(0..self.edge_list.len())] as usize;
                self.remove(victim);
                (None, vec![victim])
            };
            let delta = (self.energy - before) as f64;
            let accept = delta <= 0.0 || self.rng.gen::<f64>() < (-delta / temperature).exp();
            if !accept {
                match slot {
                    Some(s) => self.undo(s, &removed),
                    None => self.add(removed[0]),
                }
                continue;
            }
            if self.energy == 0 {
                let found = self.snapshot();
                let next = found.value as u32 + 1;
                best = found;
                self.set_target(next);
            } else if self.deg.iter().all(|&d| d as u64 >= best.value) {
                let found = self.snapshot();
                if found.value == best.value && found.at_minimum < best.at_minimum {
                    best = found;
                }
            }
        }
        best
    }
}

/// One annealing restart with its own seed.
pub(crate) fn anneal(
    space: &Space,
    matcher: &Matcher,
    seed: u64,
    iterations: u64,
    deadline: Option<Instant>,
) -> Found {
    Annealer::new(space, matcher, seed).run(iterations, deadline, space.max_degree())
}
