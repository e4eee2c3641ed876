//! Edge-list files, named graphs and run reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use sha2::{Digest, Sha256};

use crate::canon::ForbiddenFamily;
use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

fn parse_error<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        message: message.into(),
    })
}

/// Parses the edge-list format: a `k n` header, then one edge per line as
/// `k` space-separated vertex indices in `0..n`. Blank lines are ignored.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let Some((header_line, header)) = lines.next() else {
        return parse_error(1, "missing \"k n\" header");
    };
    let header: Vec<&str> = header.split_whitespace().collect();
    let (k, n) = match header.as_slice() {
        [k, n] => match (k.parse::<usize>(), n.parse::<usize>()) {
            (Ok(k), Ok(n)) => (k, n),
            _ => return parse_error(header_line, "header must be two integers \"k n\""),
        },
        _ => return parse_error(header_line, "header must be two integers \"k n\""),
    };
    if k == 0 {
        return parse_error(header_line, "k must be positive");
    }
    if n > MAX_VERTICES {
        return Err(Error::UnsupportedSize(format!("{n} vertices, limit is {MAX_VERTICES}")));
    }
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (line, body) in lines {
        let mut edge = VertexSet::default();
        let mut count = 0;
        for token in body.split_whitespace() {
            let Ok(v) = token.parse::<usize>() else {
                return parse_error(line, format!("not a vertex index: {token:?}"));
            };
            if v >= n {
                return parse_error(line, format!("vertex {v} out of range 0..{n}"));
            }
            edge.insert(v);
            count += 1;
        }
        if count != k || edge.len() != k {
            return parse_error(line, format!("expected {k} distinct vertices"));
        }
        if !seen.insert(edge) {
            return parse_error(line, format!("duplicate edge {edge}"));
        }
        edges.push(edge);
    }
    Hypergraph::new(k, n, edges)
}

/// Normalized edge-list text: sorted vertices, lexicographically sorted lines.
pub fn emit_hypergraph(graph: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", graph.k(), graph.n());
    for e in graph.edges() {
        let vs: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        out.push_str(&vs.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_hypergraph(path: &Path) -> Result<Hypergraph> {
    parse_hypergraph(&std::fs::read_to_string(path)?)
}

/// Resolves a built-in graph name: `K{t}_{k}` (t <= 8, k <= 5),
/// `K4_3_minus_e`, `P3` or `edgeless(n,k)`.
pub fn named_graph(name: &str) -> Result<Hypergraph> {
    match name {
        "K4_3_minus_e" => return Hypergraph::from_lists(3, 4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3]]),
        "P3" => return Hypergraph::from_lists(2, 3, &[&[0, 1], &[1, 2]]),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("edgeless(").and_then(|r| r.strip_suffix(')')) {
        let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
        if let [n, k] = parts.as_slice() {
            if let (Ok(n), Ok(k)) = (n.parse(), k.parse()) {
                return Hypergraph::edgeless(n, k);
            }
        }
    }
    if let Some((t, k)) = name.strip_prefix('K').and_then(|r| r.split_once('_')) {
        if let (Ok(t), Ok(k)) = (t.parse::<usize>(), k.parse::<usize>()) {
            if (1..=5).contains(&k) && k <= t && t <= 8 {
                return Hypergraph::complete(t, k);
            }
        }
    }
    invalid(format!("unknown graph name {name:?}"))
}

/// A named graph, or else an edge-list file.
pub fn load_graph(spec: &str) -> Result<Hypergraph> {
    match named_graph(spec) {
        Ok(g) => Ok(g),
        Err(_) if Path::new(spec).is_file() => read_hypergraph(Path::new(spec)),
        Err(e) => Err(e),
    }
}

/// Builds a family from names and files; isomorphic members collapse.
pub fn load_family(specs: &[String], k: usize) -> Result<ForbiddenFamily> {
    let members = specs.iter().map(|s| load_graph(s)).collect::<Result<Vec<_>>>()?;
    Ok(ForbiddenFamily::new(k, members)?.named(specs.join(",")))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// Six significant digits.
pub fn decimal6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    if (-5..15).contains(&magnitude) {
        let decimals = (5 - magnitude).max(0) as usize;
        let rounded = if magnitude > 5 {
            let scale = 10f64.powi(magnitude - 5);
            (x / scale).round() * scale
        } else {
            x
        };
        format!("{rounded:.decimals$}")
    } else {
        format!("{x:.5e}")
    }
}

/// `p/q (decimal)` with the decimal at six significant digits.
pub fn format_rational(r: &BigRational) -> String {
    let decimal = r.to_f64().map(decimal6).unwrap_or_else(|| "n/a".into());
    format!("{}/{} ({decimal})", r.numer(), r.denom())
}

/// Accepts `p/q`, a terminating decimal, or an integer.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let parsed = if let Some((p, q)) = text.split_once('/') {
        match (p.trim().parse::<BigInt>(), q.trim().parse::<BigInt>()) {
            (Ok(p), Ok(q)) if !q.is_zero() => Some(BigRational::new(p, q)),
            _ => None,
        }
    } else if let Some((whole, frac)) = text.split_once('.') {
        format!("{whole}{frac}")
            .parse::<BigInt>()
            .ok()
            .map(|d| BigRational::new(d, num_traits::pow(BigInt::from(10), frac.len())))
    } else {
        text.parse::<BigInt>().ok().map(BigRational::from_integer)
    };
    parsed.map_or_else(|| invalid(format!("not a rational number: {text:?}")), Ok)
}

const JSON_MARKER: &str = "--- json";

/// Line-oriented `key: value` report followed by the same data as JSON.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunReport {
    entries: Vec<(String, String)>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        let mut r = RunReport::default();
        r.push("command", command);
        r.push("version", env!("CARGO_PKG_VERSION"));
        r
    }

    /// Appends an entry, replacing any earlier value under the same key.
    pub fn push(&mut self, key: &str, value: impl ToString) {
        let value = value.to_string().replace('\n', " ");
        match self.entries.iter_mut().find(|(k, _)| k == key) {
            Some(entry) => entry.1 = value,
            None => self.entries.push((key.to_string(), value)),
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            let _ = writeln!(out, "{k}: {v}");
        }
        let map: BTreeMap<&str, &str> = self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
        let _ = writeln!(out, "{JSON_MARKER}");
        let _ = writeln!(out, "{}", serde_json::to_string(&map).expect("string map"));
        out
    }

    /// Reads a rendered report back; the text lines and the JSON block must agree.
    pub fn parse(text: &str) -> Result<RunReport> {
        let Some((body, json)) = text.split_once(&format!("{JSON_MARKER}\n")) else {
            return parse_error(text.lines().count() + 1, "missing JSON block");
        };
        let mut report = RunReport::default();
        for (i, line) in body.lines().enumerate() {
            let Some((k, v)) = line.split_once(": ") else {
                return parse_error(i + 1, "expected \"key: value\"");
            };
            report.entries.push((k.to_string(), v.to_string()));
        }
        let json_line = body.lines().count() + 2;
        let map: BTreeMap<String, String> = serde_json::from_str(json.trim()).map_err(|e| Error::Parse {
            line: json_line,
            message: e.to_string(),
        })?;
        if map.len() != report.entries.len() || report.entries.iter().any(|(k, v)| map.get(k) != Some(v)) {
            return parse_error(json_line, "JSON block disagrees with the key: value lines");
        }
        Ok(report)
    }
}
