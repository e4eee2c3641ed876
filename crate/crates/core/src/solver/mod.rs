//! Exact and heuristic search for `ex_l(n, F)`.
//!
//! Every witness returned here has been re-checked with
//! [`is_family_free`](crate::canon::is_family_free) and
//! [`Hypergraph::min_l_degree`], independently of the search code.

mod branch;
mod heuristic;
mod matcher;
mod oracle;
mod space;

use std::fmt;
use std::time::{Duration, Instant};

use crate::canon::{is_family_free, ForbiddenFamily};
use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph;

pub use oracle::ORACLE_MAX_SLOTS;
pub use space::SOLVER_MAX_VERTICES;

use branch::{Decision, Limits};
use matcher::Matcher;
use space::Space;

/// An instance: k-graphs on `n` vertices, l-degrees, forbidden family.
#[derive(Clone, Debug)]
pub struct SearchProblem {
    n: usize,
    k: usize,
    l: usize,
    family: ForbiddenFamily,
}

impl SearchProblem {
    pub fn new(n: usize, k: usize, l: usize, family: ForbiddenFamily) -> Result<Self> {
        if n > SOLVER_MAX_VERTICES {
            return Err(Error::UnsupportedSize(format!(
                "the solver handles at most {SOLVER_MAX_VERTICES} vertices, got {n}"
            )));
        }
        if !(l < k && k <= n) {
            return invalid(format!("need l < k <= n, got n = {n}, k = {k}, l = {l}"));
        }
        if family.k() != k {
            return invalid(format!("family is {}-uniform, expected {k}", family.k()));
        }
        if family.members().iter().any(|m| m.edge_count() == 0) {
            return invalid("family members must have at least one edge");
        }
        Ok(SearchProblem { n, k, l, family })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn family(&self) -> &ForbiddenFamily {
        &self.family
    }

    /// The trivial upper bound `C(n - l, k - l)`.
    pub fn max_degree(&self) -> u64 {
        crate::subsets::binomial((self.n - self.l) as u64, (self.k - self.l) as u64)
    }
}

/// Search limits and knobs. `None` budgets are unlimited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub time_budget: Option<Duration>,
    pub node_budget: Option<u64>,
    pub symmetry_breaking: bool,
    pub workers: usize,
    pub seed: u64,
    pub restarts: usize,
    /// Annealing iterations per restart.
    pub iterations: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            time_budget: None,
            node_budget: None,
            symmetry_breaking: true,
            workers: 1,
            seed: 0,
            restarts: 4,
            iterations: 100_000,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.time_budget.is_some_and(|t| t.is_zero()) {
            return invalid("time budget must be positive");
        }
        if self.node_budget == Some(0) {
            return invalid("node budget must be positive");
        }
        if self.workers == 0 || self.restarts == 0 || self.iterations == 0 {
            return invalid("workers, restarts and iterations must be positive");
        }
        Ok(())
    }

    fn deadline(&self, started: Instant) -> Option<Instant> {
        self.time_budget.map(|t| started + t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// `lo == hi` and both bounds are certified.
    ProvedExact,
    /// Only the lower bound carries a witness.
    LowerBoundOnly,
    /// A decision query has a witness.
    Satisfiable,
    /// A decision query has none.
    Unsat,
    BudgetExhausted,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::ProvedExact => "proved-exact",
            Status::LowerBoundOnly => "lower-bound-only",
            Status::Satisfiable => "sat",
            Status::Unsat => "unsat",
            Status::BudgetExhausted => "budget-exhausted",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed: Duration,
    /// Value reached by the annealing phase, when it ran.
    pub heuristic_value: Option<u64>,
}

/// Outcome of a search: the value lies in `[lo, hi]`.
#[derive(Clone, Debug)]
pub struct SearchResult {
    pub lo: u64,
    pub hi: u64,
    pub witness: Option<Hypergraph>,
    pub status: Status,
    pub stats: SearchStats,
}

impl SearchResult {
    /// The exact value when the bounds meet.
    pub fn value(&self) -> Option<u64> {
        (self.lo == self.hi).then_some(self.lo)
    }
}

/// Checks that `graph` is an F-free k-graph on `[n]` with `δ_l >= d`.
pub fn verify_witness(problem: &SearchProblem, graph: &Hypergraph, d: u64) -> Result<u64> {
    if graph.k() != problem.k || graph.n() != problem.n {
        return Err(Error::Verification(format!(
            "witness is a {}-graph on {} vertices",
            graph.k(),
            graph.n()
        )));
    }
    if !is_family_free(graph, &problem.family)? {
        return Err(Error::Verification("witness contains a forbidden graph".into()));
    }
    let value = graph.min_l_degree(problem.l)?.value;
    if value < d {
        return Err(Error::Verification(format!("witness has δ_l = {value} < {d}")));
    }
    Ok(value)
}

/// Exhaustive reference value for instances with at most
/// [`ORACLE_MAX_SLOTS`] k-subsets.
pub fn oracle_ex(problem: &SearchProblem) -> Result<SearchResult> {
    let started = Instant::now();
    let (value, witness) = oracle::oracle(problem.n, problem.k, problem.l, &problem.family)?;
    verify_witness(problem, &witness, value)?;
    Ok(SearchResult {
        lo: value,
        hi: value,
        witness: Some(witness),
        status: Status::ProvedExact,
        stats: SearchStats {
            elapsed: started.elapsed(),
            ..SearchStats::default()
        },
    })
}

fn witness_graph(problem: &SearchProblem, edges: Vec<crate::VertexSet>) -> Result<Hypergraph> {
    Hypergraph::new(problem.k, problem.n, edges)
}

fn decide_with(
    problem: &SearchProblem,
    space: &Space,
    matcher: &Matcher,
    d: u64,
    config: &SolverConfig,
    limits: &Limits,
) -> Result<(Decision, u64)> {
    let (decision, nodes) = branch::decide(space, matcher, d, config.symmetry_breaking, config.workers, limits);
    if let Decision::Sat(edges) = &decision {
        let graph = witness_graph(problem, edges.clone())?;
        verify_witness(problem, &graph, d)?;
    }
    Ok((decision, nodes))
}

/// Decides whether some F-free k-graph on `[n]` has `δ_l >= d`.
pub fn exists_with_min_degree(problem: &SearchProblem, d: u64, config: &SolverConfig) -> Result<SearchResult> {
    config.validate()?;
    let started = Instant::now();
    let space = Space::new(problem.n, problem.k, problem.l);
    let matcher = Matcher::new(&problem.family);
    let limits = Limits {
        deadline: config.deadline(started),
        node_budget: config.node_budget,
    };
    let (decision, nodes) = decide_with(problem, &space, &matcher, d, config, &limits)?;
    let max = problem.max_degree();
    let (lo, hi, witness, status) = match decision {
        Decision::Sat(edges) => {
            let graph = witness_graph(problem, edges)?;
            let value = graph.min_l_degree(problem.l)?.value;
            (value, max, Some(graph), Status::Satisfiable)
        }
        Decision::Unsat => (0, d.saturating_sub(1), None, Status::Unsat),
        Decision::Exhausted => (0, max, None, Status::BudgetExhausted),
    };
    Ok(SearchResult {
        lo,
        hi,
        witness,
        status,
        stats: SearchStats {
            nodes,
            elapsed: started.elapsed(),
            heuristic_value: None,
        },
    })
}

fn restart_seed(seed: u64, restart: usize) -> u64 {
    let mut z = seed ^ (restart as u64).wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn anneal_all(
    problem: &SearchProblem,
    space: &Space,
    matcher: &Matcher,
    config: &SolverConfig,
    deadline: Option<Instant>,
) -> Result<(u64, Hypergraph)> {
    let run = |r: usize| heuristic::anneal(space, matcher, restart_seed(config.seed, r), config.iterations, deadline);
    let results: Vec<heuristic::Found> = if config.workers <= 1 {
        (0..config.restarts).map(run).collect()
    } else {
        let next = std::sync::atomic::AtomicUsize::new(0);
        let slots = std::sync::Mutex::new(vec![None; config.restarts]);
        std::thread::scope(|scope| {
            for _ in 0..config.workers.min(config.restarts) {
                scope.spawn(|| loop {
                    let r = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    if r >= config.restarts {
                        break;
                    }
                    let found = run(r);
                    slots.lock().expect("no poisoning")[r] = Some(found);
                });
            }
        });
        slots
            .into_inner()
            .expect("no poisoning")
            .into_iter()
            .map(|f| f.expect("every restart ran"))
            .collect()
    };
    let best = results
        .into_iter()
        .reduce(|a, b| if b.better_than(&a) { b } else { a })
        .expect("at least one restart");
    let graph = witness_graph(problem, best.edges)?;
    let value = verify_witness(problem, &graph, best.value)?;
    Ok((value, graph))
}

/// Lower bound from seeded annealing restarts; deterministic for a fixed
/// seed unless the time budget cuts a restart short.
pub fn heuristic_lower_bound(problem: &SearchProblem, config: &SolverConfig) -> Result<SearchResult> {
    config.validate()?;
    let started = Instant::now();
    let space = Space::new(problem.n, problem.k, problem.l);
    let matcher = Matcher::new(&problem.family);
    let (value, graph) = anneal_all(problem, &space, &matcher, config, config.deadline(started))?;
    let max = problem.max_degree();
    Ok(SearchResult {
        lo: value,
        hi: max,
        witness: Some(graph),
        status: if value == max { Status::ProvedExact } else { Status::LowerBoundOnly },
        stats: SearchStats {
            nodes: 0,
            elapsed: started.elapsed(),
            heuristic_value: Some(value),
        },
    })
}

/// Computes `ex_l(n, F)`: annealing for a starting bound, then decision
/// searches for increasing `d` until one is refuted.
pub fn exact_ex(problem: &SearchProblem, config: &SolverConfig) -> Result<SearchResult> {
    config.validate()?;
    let started = Instant::now();
    let space = Space::new(problem.n, problem.k, problem.l);
    let matcher = Matcher::new(&problem.family);
    let deadline = config.deadline(started);
    let (mut lo, mut witness) = anneal_all(problem, &space, &matcher, config, deadline)?;
    let heuristic_value = lo;
    let mut hi = problem.max_degree();
    let mut nodes = 0u64;
    let mut status = Status::ProvedExact;
    while lo < hi {
        let limits = Limits {
            deadline,
            node_budget: config.node_budget.map(|b| b.saturating_sub(nodes).max(1)),
        };
        let (decision, used) = decide_with(problem, &space, &matcher, lo + 1, config, &limits)?;
        nodes += used;
        match decision {
            Decision::Sat(edges) => {
                let graph = witness_graph(problem, edges)?;
                lo = graph.min_l_degree(problem.l)?.value;
                witness = graph;
            }
            Decision::Unsat => hi = lo,
            Decision::Exhausted => {
                status = Status::BudgetExhausted;
                break;
            }
        }
    }
    Ok(SearchResult {
        lo,
        hi,
        witness: Some(witness),
        status,
        stats: SearchStats {
            nodes,
            elapsed: started.elapsed(),
            heuristic_value: Some(heuristic_value),
        },
    })
}
