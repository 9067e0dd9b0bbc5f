//! Contact-rate matrices.
//!
//! A [`ContactMatrix`] holds the symmetric rates `q[i][j]` at which each
//! pair of nodes meets. Every constructor validates symmetry, a zero
//! diagonal and connectivity of the induced graph, so downstream code can
//! rely on those invariants.
//!
//! Node indices are 0-based internally and 1-based in every external
//! format (edge lists, subsets in JSON, trial logs).

use std::collections::VecDeque;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest node count any constructor accepts (dense storage).
pub const MAX_NODES: usize = 4096;

/// Resample budget for Erdős–Rényi graphs that come out disconnected.
pub const ER_MAX_ATTEMPTS: u32 = 100;

/// Named family a matrix was built from. Used for symmetry pruning and to
/// pick closed forms; matrices built from arbitrary rates are `Custom`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Topology {
    Complete,
    Path,
    Cycle,
    Star,
    ErdosRenyi,
    Custom,
}

impl Topology {
    /// Every node can be mapped onto every other by an automorphism.
    pub fn is_vertex_transitive(self) -> bool {
        matches!(self, Topology::Complete | Topology::Cycle)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContactMatrix {
    n: usize,
    rates: Vec<f64>,
    topology: Topology,
}

impl ContactMatrix {
    /// Builds a matrix from a dense row-major rate table and validates it.
    pub fn from_dense(n: usize, rates: Vec<f64>) -> Result<Self> {
        Self::with_topology(n, rates, Topology::Custom)
    }

    fn with_topology(n: usize, rates: Vec<f64>, topology: Topology) -> Result<Self> {
        check_size(n, 1)?;
        if rates.len() != n * n {
            return Err(Error::InvalidArgument(format!(
                "expected {} rate entries for n = {n}, got {}",
                n * n,
                rates.len()
            )));
        }
        for i in 0..n {
            if rates[i * n + i] != 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "diagonal entry q[{0}][{0}] must be zero",
                    i + 1
                )));
            }
            for j in 0..n {
                let r = rates[i * n + j];
                if !r.is_finite() || r < 0.0 {
                    return Err(Error::InvalidArgument(format!(
                        "rate q[{}][{}] = {r} is not a finite nonnegative number",
                        i + 1,
                        j + 1
                    )));
                }
                if r != rates[j * n + i] {
                    return Err(Error::InvalidArgument(format!(
                        "rates are not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let q = ContactMatrix { n, rates, topology };
        q.check_connected()?;
        Ok(q)
    }

    /// Builds a matrix from 0-based undirected edges `(i, j, rate)`.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let rates = dense_from_edges(n, edges)?;
        Self::from_dense(n, rates)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    #[inline]
    pub fn rate(&self, i: usize, j: usize) -> f64 {
        self.rates[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rates[i * self.n..(i + 1) * self.n]
    }

    /// Total contact rate of node `i`, `Σ_l q[i][l]`.
    pub fn degree_rate(&self, i: usize) -> f64 {
        self.row(i).iter().sum()
    }

    /// Edges with positive rate as `(i, j, rate)` with `i < j`, in
    /// lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let r = self.rate(i, j);
                if r > 0.0 {
                    out.push((i, j, r));
                }
            }
        }
        out
    }

    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i)
            .iter()
            .enumerate()
            .filter(|(_, &r)| r > 0.0)
            .map(|(j, _)| j)
    }

    pub fn is_connected(&self) -> bool {
        self.check_connected().is_ok()
    }

    fn check_connected(&self) -> Result<()> {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for j in self.neighbours(i) {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        match seen.iter().position(|&s| !s) {
            Some(k) => Err(Error::Disconnected { unreachable: k + 1 }),
            None => Ok(()),
        }
    }

    /// Renders the matrix in the edge-list format accepted by
    /// [`load_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (i, j, r) in self.edges() {
            let _ = writeln!(out, "{} {} {r:?}", i + 1, j + 1);
        }
        out
    }
}

fn check_size(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidSize(format!("need at least {min} nodes, got {n}")));
    }
    if n > MAX_NODES {
        return Err(Error::InvalidSize(format!(
            "{n} nodes exceeds the dense-storage limit of {MAX_NODES}"
        )));
    }
    Ok(())
}

fn dense_from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Vec<f64>> {
    check_size(n, 1)?;
    let mut rates = vec![0.0; n * n];
    for &(i, j, r) in edges {
        if i >= n || j >= n || i == j {
            return Err(Error::InvalidArgument(format!(
                "edge ({}, {}) is not a valid pair of distinct nodes",
                i + 1,
                j + 1
            )));
        }
        rates[i * n + j] = r;
        rates[j * n + i] = r;
    }
    Ok(rates)
}

/// Every pair meets at rate `1/(n-1)`, so each node has total rate 1.
pub fn complete_graph(n: usize) -> Result<ContactMatrix> {
    check_size(n, 2)?;
    let r = 1.0 / (n - 1) as f64;
    let mut rates = vec![r; n * n];
    for i in 0..n {
        rates[i * n + i] = 0.0;
    }
    ContactMatrix::with_topology(n, rates, Topology::Complete)
}

/// Nodes `1 - 2 - … - n`, every edge at rate 1.
pub fn path_graph(n: usize) -> Result<ContactMatrix> {
    check_size(n, 2)?;
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1, 1.0)).collect();
    ContactMatrix::with_topology(n, dense_from_edges(n, &edges)?, Topology::Path)
}

/// The path plus the closing edge `n - 1`, every edge at rate 1.
pub fn cycle_graph(n: usize) -> Result<ContactMatrix> {
    check_size(n, 3)?;
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1.0)).collect();
    ContactMatrix::with_topology(n, dense_from_edges(n, &edges)?, Topology::Cycle)
}

/// Hub is node 1 (index 0); each leaf meets the hub at rate `1/(n-1)`.
pub fn star_graph(n: usize) -> Result<ContactMatrix> {
    check_size(n, 2)?;
    let r = 1.0 / (n - 1) as f64;
    let edges: Vec<_> = (1..n).map(|i| (0, i, r)).collect();
    ContactMatrix::with_topology(n, dense_from_edges(n, &edges)?, Topology::Star)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErParams {
    pub n: usize,
    pub c: f64,
    pub seed: u64,
}

impl ErParams {
    pub fn new(n: usize, c: f64, seed: u64) -> Self {
        ErParams { n, c, seed }
    }

    /// Edge probability `p_n = c·log(n)/n`.
    pub fn edge_probability(&self) -> f64 {
        self.c * (self.n as f64).ln() / self.n as f64
    }

    /// Common rate of every present edge, `1/((n-1)·p_n)`.
    pub fn edge_rate(&self) -> f64 {
        1.0 / ((self.n - 1) as f64 * self.edge_probability())
    }

    fn validate(&self) -> Result<()> {
        check_size(self.n, 2)?;
        let p = self.edge_probability();
        if !(self.c > 0.0) || !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain(format!(
                "edge probability c·log(n)/n = {p} must lie in (0, 1) (n = {}, c = {})",
                self.n, self.c
            )));
        }
        Ok(())
    }
}

/// Samples one Erdős–Rényi contact matrix, without the connectivity check.
/// Attempt `k` uses sub-seed `seed + k`.
fn sample_er(params: &ErParams, attempt: u32) -> Vec<f64> {
    let n = params.n;
    let p = params.edge_probability();
    let r = params.edge_rate();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed.wrapping_add(attempt as u64));
    let mut rates = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                rates[i * n + j] = r;
                rates[j * n + i] = r;
            }
        }
    }
    rates
}

/// Each pair is present independently with probability `p_n`; present
/// pairs meet at rate `1/((n-1)·p_n)`. Disconnected samples are redrawn
/// with the next sub-seed, up to [`ER_MAX_ATTEMPTS`] times.
pub fn erdos_renyi_graph(params: ErParams) -> Result<ContactMatrix> {
    params.validate()?;
    for attempt in 0..ER_MAX_ATTEMPTS {
        let rates = sample_er(&params, attempt);
        match ContactMatrix::with_topology(params.n, rates, Topology::ErdosRenyi) {
            Ok(q) => return Ok(q),
            Err(Error::Disconnected { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::GenerationFailed {
        attempts: ER_MAX_ATTEMPTS,
    })
}

/// Parses the edge-list format: first line `n`, then one `i j rate` line
/// per unordered pair with `1 <= i < j <= n` and `rate > 0`. Blank lines
/// and lines starting with `#` are ignored.
pub fn load_edge_list(text: &str) -> Result<ContactMatrix> {
    let mut n: Option<usize> = None;
    let mut rates = Vec::new();
    let mut seen_line: Vec<usize> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let Some(n) = n else {
            if fields.len() != 1 {
                return Err(Error::Parse {
                    line,
                    message: format!("expected node count, found {body:?}"),
                });
            }
            let count: usize = fields[0].parse().map_err(|_| Error::Parse {
                line,
                message: format!("invalid node count {:?}", fields[0]),
            })?;
            check_size(count, 1).map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
            n = Some(count);
            rates = vec![0.0; count * count];
            seen_line = vec![0; count * count];
            continue;
        };
        if fields.len() != 3 {
            return Err(Error::Parse {
                line,
                message: format!("expected `i j rate`, found {body:?}"),
            });
        }
        let index = |s: &str| -> Result<usize> {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line,
                message: format!("invalid node index {s:?}"),
            })
        };
        let i = index(fields[0])?;
        let j = index(fields[1])?;
        let rate: f64 = fields[2].parse().map_err(|_| Error::Parse {
            line,
            message: format!("invalid rate {:?}", fields[2]),
        })?;
        if i < 1 || j > n || i >= j {
            return Err(Error::Edge {
                line,
                i,
                j,
                message: format!("must satisfy 1 <= i < j <= {n}"),
            });
        }
        if !(rate > 0.0 && rate.is_finite()) {
            return Err(Error::Edge {
                line,
                i,
                j,
                message: format!("has non-positive or non-finite rate {rate}"),
            });
        }
        let (a, b) = (i - 1, j - 1);
        if seen_line[a * n + b] != 0 {
            return Err(Error::Edge {
                line,
                i,
                j,
                message: format!("duplicates the edge on line {}", seen_line[a * n + b]),
            });
        }
        seen_line[a * n + b] = line;
        rates[a * n + b] = rate;
        rates[b * n + a] = rate;
    }

    let n = n.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        message: "missing node count".into(),
    })?;
    ContactMatrix::from_dense(n, rates)
}
