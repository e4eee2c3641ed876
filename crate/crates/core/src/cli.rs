//! Command-line front end. Every subcommand is a thin adapter over a library call.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::canon::{is_family_free, link_family};
use crate::combinatorics::{
    count_good_subsets, f_multi, jump_parameters, layered_parameters, m_threshold, GoodSubsetMode,
};
use crate::constructions::{sylvester_hadamard, ConstructionSpec};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::io::{
    decimal6, emit_hypergraph, format_rational, load_family, load_graph, parse_rational, read_hypergraph,
    sha256_hex, RunReport,
};
use crate::solver::{self, SearchProblem, SearchResult, SolverConfig, Status};
use crate::subsets::binomial;

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "HYPERTURAN_WORKERS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_UNSUPPORTED: i32 = 66;
pub const EXIT_SOFTWARE: i32 = 70;

#[derive(Parser, Debug)]
#[command(name = "hyperturan", version, about = "Minimum l-degree Turán problems on k-graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a construction and write it as an edge list plus a `.meta` sidecar.
    Construct {
        #[command(subcommand)]
        which: Construction,
    },
    /// Degree statistics of an edge-list file.
    Stats {
        #[arg(long)]
        file: PathBuf,
        /// Only this l; default is every l < k.
        #[arg(long)]
        l: Option<usize>,
    },
    /// Whether a graph is free of a family.
    CheckFree {
        #[arg(long)]
        file: PathBuf,
        /// Graph name or edge-list file; repeatable.
        #[arg(long, required = true)]
        forbidden: Vec<String>,
    },
    /// Number of copies of a pattern.
    CountCopies {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        pattern: String,
    },
    /// The l-link family of a graph.
    LinkFamily {
        /// Graph name or edge-list file.
        #[arg(long)]
        graph: String,
        #[arg(long)]
        l: usize,
    },
    /// Compute or bound ex_l(n, F).
    Solve(SolveArgs),
    /// Constants of the jump constructions.
    Params {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        /// Rational, e.g. `1/10` or `0.1`.
        #[arg(long)]
        delta: String,
        /// Target for the layered construction.
        #[arg(long)]
        q: Option<String>,
    },
    /// Counting helpers.
    Count {
        #[command(subcommand)]
        which: Counting,
    },
}

#[derive(Subcommand, Debug)]
enum Construction {
    B {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        out: PathBuf,
    },
    Layered {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Giraud's 4-graph on a Sylvester Hadamard matrix of order m.
    Giraud {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: PathBuf,
    },
    RandomLink {
        /// Base graph name or edge-list file.
        #[arg(long)]
        base: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum Counting {
    /// Number of (k-l)-sets with fewer than l vertices in each part.
    F {
        /// Comma-separated part sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<u64>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// m-subsets whose induced minimum l-degree exceeds alpha * C(m, k-l).
    GoodSubsets {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        alpha: String,
        #[arg(long, conflicts_with = "samples")]
        exact: bool,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.95)]
        confidence: f64,
    },
    /// Smallest m meeting both sampling conditions for epsilon.
    Threshold {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        epsilon: String,
    },
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    l: usize,
    /// Graph name or edge-list file; repeatable.
    #[arg(long, required = true)]
    forbidden: Vec<String>,
    /// oracle | exact | decision:<d> | heuristic
    #[arg(long, default_value = "exact")]
    mode: String,
    /// Seconds.
    #[arg(long)]
    time_budget: Option<f64>,
    #[arg(long)]
    nodes: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    iterations: Option<u64>,
    #[arg(long)]
    no_symmetry: bool,
    /// Where to write the witness edge list.
    #[arg(long)]
    witness: Option<PathBuf>,
}

/// Result of one invocation: exit code plus the text for each stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn exit_code(error: &Error) -> i32 {
    match error {
        Error::InvalidArgument(_) | Error::Parse { .. } | Error::Io(_) => EXIT_DATA,
        Error::UnsupportedSize(_) => EXIT_UNSUPPORTED,
        Error::ResourceLimit(_) => EXIT_BUDGET,
        Error::Verification(_) => EXIT_SOFTWARE,
    }
}

/// Parses `argv` (program name first) and runs the subcommand.
pub fn run_command<S: AsRef<str>>(argv: &[S]) -> CommandOutput {
    let args: Vec<&str> = argv.iter().map(AsRef::as_ref).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                CommandOutput { code, stdout: text, stderr: String::new() }
            } else {
                CommandOutput { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let echo = args.iter().skip(1).copied().collect::<Vec<_>>().join(" ");
    let started = Instant::now();
    match execute(cli.command, &echo) {
        Ok((code, mut report)) => {
            report.push("wall_time_s", format!("{:.3}", started.elapsed().as_secs_f64()));
            CommandOutput {
                code,
                stdout: report.render(),
                stderr: String::new(),
            }
        }
        Err(e) => CommandOutput {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn digest_file(report: &mut RunReport, key: &str, path: &Path) -> Result<()> {
    let bytes = std::fs::read(path)?;
    report.push(key, path.display());
    report.push(&format!("{key}_sha256"), sha256_hex(&bytes));
    Ok(())
}

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den.max(1)))
}

fn execute(command: Command, echo: &str) -> Result<(i32, RunReport)> {
    let mut report = RunReport::new(echo);
    let code = match command {
        Command::Construct { which } => construct(which, &mut report)?,
        Command::Stats { file, l } => {
            let g = read_hypergraph(&file)?;
            digest_file(&mut report, "input", &file)?;
            describe(&g, &mut report);
            let ls: Vec<usize> = match l {
                Some(l) => {
                    report.push("l", l);
                    vec![l]
                }
                None => (0..g.k()).collect(),
            };
            let single = ls.len() == 1;
            for l in ls {
                let m = g.min_l_degree(l)?;
                let key = if single { "delta_l".to_string() } else { format!("delta_{l}") };
                report.push(&key, m.value);
                report.push(&format!("{key}_witness"), m.witness);
                let full = binomial((g.n() - l) as u64, (g.k() - l) as u64);
                report.push(
                    &format!("finite ratio δ_{l}/C(n,k−{l})"),
                    format_rational(&ratio(m.value, full)),
                );
            }
            EXIT_OK
        }
        Command::CheckFree { file, forbidden } => {
            let g = read_hypergraph(&file)?;
            digest_file(&mut report, "input", &file)?;
            let family = load_family(&forbidden, g.k())?;
            report.push("family", family.name().unwrap_or(""));
            report.push("family_members", family.members().len());
            report.push("free", is_family_free(&g, &family)?);
            EXIT_OK
        }
        Command::CountCopies { file, pattern } => {
            let g = read_hypergraph(&file)?;
            digest_file(&mut report, "input", &file)?;
            let p = load_graph(&pattern)?;
            report.push("pattern", &pattern);
            report.push("copies", crate::embed::count_copies(&g, &p)?);
            EXIT_OK
        }
        Command::LinkFamily { graph, l } => {
            let g = load_graph(&graph)?;
            let family = link_family(&g, l)?;
            report.push("graph", &graph);
            report.push("l", l);
            report.push("members", family.len());
            for (i, member) in family.iter().enumerate() {
                let h = member.to_hypergraph();
                let edges: Vec<String> = h.edges().iter().map(|e| e.to_string()).collect();
                report.push(
                    &format!("member_{i}"),
                    format!("k={} n={} edges=[{}]", h.k(), h.n(), edges.join(" ")),
                );
            }
            EXIT_OK
        }
        Command::Solve(args) => solve(args, &mut report)?,
        Command::Params { k, l, delta, q } => {
            let delta = parse_rational(&delta)?;
            let p = match &q {
                Some(q) => layered_parameters(k, l, &delta, &parse_rational(q)?)?,
                None => jump_parameters(k, l, &delta)?,
            };
            report.push("k", k);
            report.push("l", l);
            report.push("delta", format_rational(&p.delta));
            report.push("epsilon0_pow", format_rational(&p.epsilon0_pow));
            report.push("epsilon0", decimal6(p.epsilon0));
            report.push("t", p.t);
            report.push("m0", p.m0);
            for (i, (name, ok)) in p.checks.iter().enumerate() {
                report.push(&format!("check_{i}"), format!("{ok} ({name})"));
            }
            if let Some(lp) = &p.layered {
                report.push("q", format_rational(&lp.q));
                report.push("a", lp.a);
                report.push("b", lp.b);
                report.push("epsilon", format_rational(&lp.epsilon));
                report.push("n0", lp.n0);
                for (i, term) in lp.m_terms.iter().enumerate() {
                    report.push(&format!("m_term_{}", i + 1), term);
                }
                report.push("m", &lp.m);
            }
            EXIT_OK
        }
        Command::Count { which } => count(which, &mut report)?,
    };
    Ok((code, report))
}

fn describe(g: &Hypergraph, report: &mut RunReport) {
    report.push("k", g.k());
    report.push("n", g.n());
    report.push("edges", g.edge_count());
    report.push(
        "finite ratio e/C(n,k)",
        format_rational(&ratio(g.edge_count() as u64, binomial(g.n() as u64, g.k() as u64))),
    );
}

fn write_graph(report: &mut RunReport, key: &str, path: &Path, g: &Hypergraph) -> Result<()> {
    std::fs::write(path, emit_hypergraph(g))?;
    digest_file(report, key, path)
}

fn construct(which: Construction, report: &mut RunReport) -> Result<i32> {
    let (spec, out) = match which {
        Construction::B { p, t, k, l, out } => (ConstructionSpec::B { p, t, k, l }, out),
        Construction::Layered { k, l, a, b, t, p, out } => (ConstructionSpec::Layered { k, l, a, b, t, p }, out),
        Construction::Giraud { m, out } => (
            ConstructionSpec::Giraud {
                matrix: sylvester_hadamard(m)?,
            },
            out,
        ),
        Construction::RandomLink { base, n, k, l, seed, out } => (
            ConstructionSpec::RandomLink {
                base: load_graph(&base)?,
                n,
                k,
                l,
                seed,
            },
            out,
        ),
    };
    let g = spec.build()?;
    report.push("variant", spec.variant());
    for (key, value) in spec.parameters() {
        report.push(&format!("param_{key}"), value);
    }
    describe(&g, report);
    write_graph(report, "output", &out, &g)?;
    let mut meta = RunReport::default();
    meta.push("variant", spec.variant());
    for (key, value) in spec.parameters() {
        meta.push(&key, value);
    }
    meta.push("graph_sha256", report.get("output_sha256").unwrap_or_default());
    let meta_path = PathBuf::from(format!("{}.meta", out.display()));
    std::fs::write(&meta_path, meta.render())?;
    digest_file(report, "metadata", &meta_path)?;
    Ok(EXIT_OK)
}

fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&w| w > 0)
        .unwrap_or(1)
}

fn solve(args: SolveArgs, report: &mut RunReport) -> Result<i32> {
    let family = load_family(&args.forbidden, args.k)?;
    let problem = SearchProblem::new(args.n, args.k, args.l, family)?;
    let defaults = SolverConfig::default();
    let time_budget = match args.time_budget {
        Some(s) if !(s > 0.0 && s.is_finite()) => {
            return Err(Error::InvalidArgument("time budget must be positive".into()))
        }
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    let config = SolverConfig {
        time_budget,
        node_budget: args.nodes,
        symmetry_breaking: !args.no_symmetry,
        workers: args.workers.unwrap_or_else(default_workers),
        seed: args.seed,
        restarts: args.restarts.unwrap_or(defaults.restarts),
        iterations: args.iterations.unwrap_or(defaults.iterations),
    };
    let result = match args.mode.as_str() {
        "oracle" => solver::oracle_ex(&problem)?,
        "exact" => solver::exact_ex(&problem, &config)?,
        "heuristic" => solver::heuristic_lower_bound(&problem, &config)?,
        other => match other.strip_prefix("decision:").map(str::parse::<u64>) {
            Some(Ok(d)) => solver::exists_with_min_degree(&problem, d, &config)?,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "mode must be oracle, exact, decision:<d> or heuristic, got {other:?}"
                )))
            }
        },
    };
    report.push("mode", &args.mode);
    report.push("n", args.n);
    report.push("k", args.k);
    report.push("l", args.l);
    report.push("family", problem.family().name().unwrap_or(""));
    report.push("seed", config.seed);
    report.push("workers", config.workers);
    report.push("symmetry_breaking", config.symmetry_breaking);
    push_result(report, &problem, &result, args.witness.as_deref())?;
    Ok(match result.status {
        Status::BudgetExhausted => EXIT_BUDGET,
        _ => EXIT_OK,
    })
}

fn push_result(
    report: &mut RunReport,
    problem: &SearchProblem,
    result: &SearchResult,
    witness_path: Option<&Path>,
) -> Result<()> {
    match result.value() {
        Some(v) => report.push("value", v),
        None => report.push("value", format!("[{}, {}]", result.lo, result.hi)),
    }
    report.push("lo", result.lo);
    report.push("hi", result.hi);
    report.push("status", result.status);
    report.push("nodes", result.stats.nodes);
    report.push("search_time_s", format!("{:.3}", result.stats.elapsed.as_secs_f64()));
    if let Some(h) = result.stats.heuristic_value {
        report.push("heuristic_value", h);
    }
    let full = binomial((problem.n() - problem.l()) as u64, (problem.k() - problem.l()) as u64);
    report.push(
        &format!("finite ratio δ_{}/C(n,k−{})", problem.l(), problem.l()),
        format_rational(&ratio(result.lo, full)),
    );
    match (&result.witness, witness_path) {
        (Some(w), Some(path)) => {
            report.push("witness_edges", w.edge_count());
            write_graph(report, "witness", path, w)?;
        }
        (Some(w), None) => report.push("witness_edges", w.edge_count()),
        (None, _) => report.push("witness", "none"),
    }
    Ok(())
}

fn count(which: Counting, report: &mut RunReport) -> Result<i32> {
    match which {
        Counting::F { parts, k, l } => {
            let parts_text: Vec<String> = parts.iter().map(u64::to_string).collect();
            report.push("parts", parts_text.join(","));
            report.push("k", k);
            report.push("l", l);
            report.push("f", f_multi(&parts, k, l)?);
        }
        Counting::GoodSubsets {
            file,
            l,
            m,
            alpha,
            exact,
            samples,
            seed,
            confidence,
        } => {
            let g = read_hypergraph(&file)?;
            digest_file(report, "input", &file)?;
            let alpha = parse_rational(&alpha)?;
            let mode = match samples {
                Some(samples) if !exact => GoodSubsetMode::Sampled {
                    samples,
                    seed,
                    confidence,
                },
                _ => GoodSubsetMode::Exact {
                    budget: crate::combinatorics::DEFAULT_EXACT_BUDGET,
                },
            };
            let c = count_good_subsets(&g, l, m, &alpha, &mode)?;
            report.push("l", l);
            report.push("m", m);
            report.push("alpha", format_rational(&alpha));
            report.push("total", c.total);
            match c.exact {
                Some(x) => {
                    report.push("mode", "exact");
                    report.push("count", x);
                    report.push("fraction", format_rational(&ratio(x, c.total)));
                }
                None => {
                    report.push("mode", "sampled");
                    report.push("seed", seed);
                    report.push("samples", c.samples);
                    report.push("hits", c.hits);
                    report.push("estimate", decimal6(c.estimate));
                    if let (Some((lo, hi)), Some(conf)) = (c.interval, c.confidence) {
                        report.push("interval", format!("[{}, {}]", decimal6(lo), decimal6(hi)));
                        report.push("confidence", conf);
                    }
                }
            }
        }
        Counting::Threshold { k, l, epsilon } => {
            let eps = parse_rational(&epsilon)?;
            report.push("k", k);
            report.push("l", l);
            report.push("epsilon", format_rational(&eps));
            report.push("m_threshold", m_threshold(k, l, &eps)?);
        }
    }
    Ok(EXIT_OK)
}
