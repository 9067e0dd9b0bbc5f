//! Batch experiments: build a graph, run simulations and analytics, and
//! render the results as CSV or JSON tables.
//!
//! Output depends only on the [`ExperimentSpec`]; nothing time- or
//! host-dependent is written, so re-running a spec reproduces the bytes.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::analytics::{
    er_time_bound, expected_t1_complete, expected_t1_star, margin_asymptotics,
    star_dominant_term, theorem_bound, AnalyticReport,
};
use crate::error::{Error, Result};
use crate::graph::{
    complete_graph, cycle_graph, erdos_renyi_graph, load_edge_list, path_graph, star_graph,
    ContactMatrix, ErParams, Topology,
};
use crate::par::Execution;
use crate::protocol::{InitSpec, NodeState, Placement};
use crate::sim::{default_t_max, run_monte_carlo_with, survival_curve, MonteCarloSummary};
use crate::spectral::{
    delta_closed_form, delta_er_bound, delta_exhaustive_with, delta_rate_lower_bound,
    delta_sampled, EnumerationOptions, Method, SpectralResult, DEFAULT_MAX_ENUMERATION_N,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum GraphSource {
    Complete { n: usize },
    Path { n: usize },
    Cycle { n: usize },
    Star { n: usize },
    Er { n: usize, c: f64, seed: u64 },
    File { path: PathBuf },
}

impl GraphSource {
    pub fn build(&self) -> Result<ContactMatrix> {
        match self {
            GraphSource::Complete { n } => complete_graph(*n),
            GraphSource::Path { n } => path_graph(*n),
            GraphSource::Cycle { n } => cycle_graph(*n),
            GraphSource::Star { n } => star_graph(*n),
            GraphSource::Er { n, c, seed } => erdos_renyi_graph(ErParams::new(*n, *c, *seed)),
            GraphSource::File { path } => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                load_edge_list(&text)
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            GraphSource::Complete { n } => format!("complete(n={n})"),
            GraphSource::Path { n } => format!("path(n={n})"),
            GraphSource::Cycle { n } => format!("cycle(n={n})"),
            GraphSource::Star { n } => format!("star(n={n})"),
            GraphSource::Er { n, c, seed } => format!("er(n={n},c={c},seed={seed})"),
            GraphSource::File { path } => format!("file({})", path.display()),
        }
    }
}

/// Initial counts, given directly or as a majority fraction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Counts {
    Exact { s0: usize, s1: usize },
    /// `s0 = ⌈αn⌉`, `s1 = n − s0`.
    Alpha(f64),
}

/// Rounds `α·n` up, ignoring floating-point noise below `1e-9`.
pub fn counts_from_alpha(n: usize, alpha: f64) -> Result<(usize, usize)> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidArgument(format!("α = {alpha} must lie in (0, 1]")));
    }
    let s0 = ((alpha * n as f64 - 1e-9).ceil() as usize).min(n);
    Ok((s0, n - s0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlacementChoice {
    /// `Zero` on nodes `1..=s0`: a contiguous block on paths and cycles,
    /// and a `Zero` hub on the star.
    Prefix,
    /// `One` on nodes `1..=s1`; puts a `One` on the star hub.
    Suffix,
    /// Uniformly random, drawn from the experiment seed.
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaMethod {
    /// Closed form where one exists, exhaustive enumeration up to the size
    /// guard, then the best available lower bound.
    Auto,
    Exhaustive,
    ClosedForm,
    Sampled,
    RateBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Sim,
    Delta,
    Bounds,
    Analytic,
    Survival,
    Sweep,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Sim => "sim",
            Command::Delta => "delta",
            Command::Bounds => "bounds",
            Command::Analytic => "analytic",
            Command::Survival => "survival",
            Command::Sweep => "sweep",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub command: Command,
    pub graph: GraphSource,
    /// Ignored by `sweep`, which takes its counts from `alpha_grid`.
    pub counts: Counts,
    pub alpha_grid: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub placement: PlacementChoice,
    pub method: DeltaMethod,
    /// Subset samples for [`DeltaMethod::Sampled`].
    pub samples: usize,
    pub t_max: Option<f64>,
    /// Time grid for `survival`.
    pub grid: Vec<f64>,
    pub max_n: usize,
    #[serde(skip)]
    pub execution: Execution,
}

impl ExperimentSpec {
    pub fn new(command: Command, graph: GraphSource, counts: Counts) -> Self {
        ExperimentSpec {
            command,
            graph,
            counts,
            alpha_grid: Vec::new(),
            trials: 1000,
            seed: 0,
            placement: PlacementChoice::Prefix,
            method: DeltaMethod::Auto,
            samples: 10_000,
            t_max: None,
            grid: Vec::new(),
            max_n: DEFAULT_MAX_ENUMERATION_N,
            execution: Execution::default(),
        }
    }
}

/// Parses `start:stop:step` into an inclusive grid.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || Error::InvalidArgument(format!("expected start:stop:step, got `{text}`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let v: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    let (start, stop, step) = (v[0], v[1], v[2]);
    if !(step > 0.0) || !(stop >= start) || !start.is_finite() || !stop.is_finite() {
        return Err(bad());
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if count > 1_000_000 {
        return Err(Error::InvalidArgument(format!("grid `{text}` has too many points")));
    }
    Ok((0..count).map(|k| start + k as f64 * step).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Text(String),
    Empty,
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Float)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// Formats with 12 significant digits and no exponent.
pub fn format_float(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let rounded: f64 = format!("{v:.11e}").parse().expect("round-trips");
    rounded.to_string()
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Empty => Value::Null,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(columns: &[&'static str]) -> Self {
        Table {
            metadata: Vec::new(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    fn meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.push((key.to_string(), value.to_string()));
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }

    /// Metadata as `# key: value` comment lines, then a header and rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k}: {v}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let metadata: Map<String, Value> = self
            .metadata
            .iter()
            .map(|(k, v)| (k.clone(), Value::from(v.as_str())))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                Value::Object(
                    self.columns
                        .iter()
                        .zip(row)
                        .map(|(c, cell)| (c.to_string(), cell.json()))
                        .collect(),
                )
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("metadata".into(), Value::Object(metadata));
        doc.insert("rows".into(), Value::Array(rows));
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("serialises");
        s.push('\n');
        s
    }
}

/// Result of one experiment.
#[derive(Debug, Clone, PartialEq)]
pub enum Report {
    Table(Table),
    Spectral { table: Table, result: SpectralResult },
}

impl Report {
    pub fn table(&self) -> &Table {
        match self {
            Report::Table(t) | Report::Spectral { table: t, .. } => t,
        }
    }

    /// `delta` renders as a bare `SpectralResult` object in JSON.
    pub fn render(&self, format: Format) -> String {
        match (self, format) {
            (Report::Spectral { result, .. }, Format::Json) => {
                let mut s = serde_json::to_string_pretty(result).expect("serialises");
                s.push('\n');
                s
            }
            (r, Format::Json) => r.table().to_json(),
            (r, Format::Csv) => r.table().to_csv(),
        }
    }
}

pub fn run(spec: &ExperimentSpec) -> Result<Report> {
    let q = spec.graph.build()?;
    let n = q.n();
    let ctx = Context { spec, q: &q };
    match spec.command {
        Command::Sweep => ctx.sweep(),
        cmd => {
            let (s0, s1) = match spec.counts {
                Counts::Exact { s0, s1 } => (s0, s1),
                Counts::Alpha(a) => counts_from_alpha(n, a)?,
            };
            if s0 + s1 != n {
                return Err(Error::InvalidArgument(format!(
                    "counts s0 = {s0}, s1 = {s1} must sum to n = {n}"
                )));
            }
            if s1 > s0 {
                return Err(Error::InvalidArgument(format!(
                    "s1 = {s1} exceeds s0 = {s0}; relabel so that Zero is the majority"
                )));
            }
            match cmd {
                Command::Sim => ctx.sim(s0, s1),
                Command::Delta => ctx.delta_report(s0, s1),
                Command::Bounds => ctx.bounds(s0, s1),
                Command::Analytic => ctx.analytic(s0, s1),
                Command::Survival => ctx.survival(s0, s1),
                Command::Sweep => unreachable!(),
            }
        }
    }
}

struct Context<'a> {
    spec: &'a ExperimentSpec,
    q: &'a ContactMatrix,
}

impl Context<'_> {
    fn header(&self, table: &mut Table) {
        let spec = self.spec;
        table.meta("command", spec.command.as_str());
        table.meta("graph", spec.graph.describe());
        table.meta("n", self.q.n());
        table.meta("seed", spec.seed);
        match spec.counts {
            Counts::Alpha(a) if spec.command != Command::Sweep => {
                table.meta("alpha", a);
                table.meta("counts_rounding", "s0 = ceil(alpha * n), s1 = n - s0");
            }
            _ => {}
        }
    }

    fn init(&self, s0: usize, s1: usize) -> InitSpec {
        match self.spec.placement {
            PlacementChoice::Prefix => InitSpec::prefix(s0, s1),
            PlacementChoice::Suffix => InitSpec::explicit(
                std::iter::repeat_n(NodeState::One, s1)
                    .chain(std::iter::repeat_n(NodeState::Zero, s0))
                    .collect(),
            ),
            PlacementChoice::Random => InitSpec::new(s0, s1, Placement::Random(self.spec.seed)),
        }
    }

    fn enumeration(&self) -> EnumerationOptions {
        EnumerationOptions {
            max_n: self.spec.max_n,
            execution: self.spec.execution,
            symmetry_pruning: true,
        }
    }

    fn delta(&self, s0: usize, s1: usize) -> Result<SpectralResult> {
        let q = self.q;
        let n = q.n();
        let k = s0.checked_sub(s1).filter(|&k| k > 0).ok_or_else(|| {
            Error::InvalidArgument(format!("δ needs s0 > s1 (got s0 = {s0}, s1 = {s1})"))
        })?;
        let bound = |method, delta| SpectralResult {
            delta,
            argmin_subset: Vec::new(),
            method,
            subset_size: k,
        };
        match self.spec.method {
            DeltaMethod::Exhaustive => delta_exhaustive_with(q, s0, s1, self.enumeration()),
            DeltaMethod::ClosedForm => delta_closed_form(q, s0, s1),
            DeltaMethod::Sampled => {
                delta_sampled(q, s0, s1, self.spec.samples, self.spec.seed, self.spec.execution)
            }
            DeltaMethod::RateBound => match delta_rate_lower_bound(q, s0, s1)? {
                d if d > 0.0 => Ok(bound(Method::RateBound, d)),
                _ => Err(Error::Unsupported(
                    "the rate bound is zero for this graph and margin, so it certifies nothing; \
                     try a larger margin, --method exhaustive or --method sampled (uncertified)"
                        .into(),
                )),
            },
            DeltaMethod::Auto => {
                let named = matches!(
                    q.topology(),
                    Topology::Complete | Topology::Path | Topology::Cycle | Topology::Star
                );
                if named {
                    if let Ok(r) = delta_closed_form(q, s0, s1) {
                        return Ok(r);
                    }
                }
                if n <= self.spec.max_n {
                    return delta_exhaustive_with(q, s0, s1, self.enumeration());
                }
                if let GraphSource::Er { c, .. } = self.spec.graph {
                    if let Ok(d) = delta_er_bound(n, c, s0 as f64 / n as f64) {
                        return Ok(bound(Method::ErBound, d));
                    }
                }
                let d = delta_rate_lower_bound(q, s0, s1)?;
                if d > 0.0 {
                    return Ok(bound(Method::RateBound, d));
                }
                Err(Error::Unsupported(format!(
                    "no certified δ for this graph at n = {n}: enumeration exceeds the guard of {} \
                     and the rate bound is zero; use --method sampled (uncertified) or raise \
                     CONSENSUS_MAX_N",
                    self.spec.max_n
                )))
            }
        }
    }

    /// Exact `E(T_1)` where a formula exists for this graph and placement.
    fn exact_t1(&self, init: &InitSpec) -> Result<Option<(f64, &'static str)>> {
        let (n, s0, s1) = (self.q.n(), init.s0, init.s1);
        Ok(match self.q.topology() {
            Topology::Complete => Some((expected_t1_complete(n, s0, s1)?, "harmonic_closed_form")),
            Topology::Star if s1 >= 1 && n >= 3 => {
                let hub = init.configuration(n)?.state(0);
                Some((expected_t1_star(n, s0, s1, hub)?, "star_mode_sum"))
            }
            _ => None,
        })
    }

    fn t_max(&self, delta: Option<f64>) -> f64 {
        self.spec.t_max.unwrap_or_else(|| default_t_max(self.q.n(), delta))
    }

    fn simulate(&self, init: &InitSpec, delta: Option<f64>) -> Result<MonteCarloSummary> {
        run_monte_carlo_with(
            self.q,
            init,
            self.spec.trials,
            self.spec.seed,
            Some(self.t_max(delta)),
            self.spec.execution,
        )
    }

    fn sim(&self, s0: usize, s1: usize) -> Result<Report> {
        let n = self.q.n();
        let init = self.init(s0, s1);
        let delta = if s0 > s1 { Some(self.delta(s0, s1)?) } else { None };
        let summary = self.simulate(&init, delta.as_ref().map(|d| d.delta))?;
        let exact = self.exact_t1(&init)?;
        let bound_t1 = match &delta {
            Some(d) => Some(theorem_bound(d.delta, n as f64)?.bound_t1),
            None => None,
        };

        let mut t = Table::new(&[
            "n", "s0", "s1", "mean_t1", "ci_t1", "mean_t2", "ci_t2", "bound_t1", "exact_t1",
        ]);
        self.header(&mut t);
        self.sim_meta(&mut t, &summary, delta.as_ref(), exact.map(|e| e.1));
        t.push(vec![
            n.into(),
            s0.into(),
            s1.into(),
            summary.mean_t1().into(),
            summary.ci95_t1().into(),
            summary.mean_t2().into(),
            summary.ci95_t2().into(),
            bound_t1.into(),
            exact.map(|e| e.0).into(),
        ]);
        Ok(Report::Table(t))
    }

    fn sim_meta(
        &self,
        t: &mut Table,
        summary: &MonteCarloSummary,
        delta: Option<&SpectralResult>,
        exact_formula: Option<&str>,
    ) {
        t.meta("trials", summary.trials);
        t.meta("completed", summary.completed);
        t.meta("draws", summary.draws);
        t.meta("truncated", summary.truncated);
        t.meta("all_correct", summary.all_correct);
        t.meta("placement", format!("{:?}", self.spec.placement).to_lowercase());
        t.meta("ci", "1.96 * sample sd / sqrt(trials)");
        if let Some(d) = delta {
            t.meta("delta", format_float(d.delta));
            t.meta("delta_method", d.method.as_str());
            t.meta("bound_formula", "theorem_bound: (ln n + 1) / delta");
        }
        if let Some(f) = exact_formula {
            t.meta("exact_formula", f);
        }
    }

    fn delta_report(&self, s0: usize, s1: usize) -> Result<Report> {
        let r = self.delta(s0, s1)?;
        let mut t = Table::new(&["n", "s0", "s1", "subset_size", "delta", "method", "argmin_subset"]);
        self.header(&mut t);
        let subset: Vec<String> = r.argmin_subset.iter().map(|i| i.to_string()).collect();
        t.push(vec![
            self.q.n().into(),
            s0.into(),
            s1.into(),
            r.subset_size.into(),
            r.delta.into(),
            r.method.as_str().into(),
            subset.join(" ").into(),
        ]);
        Ok(Report::Spectral { table: t, result: r })
    }

    fn bounds(&self, s0: usize, s1: usize) -> Result<Report> {
        let n = self.q.n();
        let d = self.delta(s0, s1)?;
        let b = theorem_bound(d.delta, n as f64)?;
        let mut t = Table::new(&[
            "n", "s0", "s1", "alpha", "delta", "method", "bound_t1", "bound_t2", "bound_total",
        ]);
        self.header(&mut t);
        t.meta("bound_formula", "theorem_bound: (ln n + 1) / delta per phase");
        t.push(vec![
            n.into(),
            s0.into(),
            s1.into(),
            (s0 as f64 / n as f64).into(),
            d.delta.into(),
            d.method.as_str().into(),
            b.bound_t1.into(),
            b.bound_t2.into(),
            b.bound_total.into(),
        ]);
        Ok(Report::Table(t))
    }

    fn analytic_report(&self, s0: usize, s1: usize) -> Result<(AnalyticReport, SpectralResult)> {
        let n = self.q.n();
        let d = self.delta(s0, s1)?;
        let init = self.init(s0, s1);
        let mut r = AnalyticReport::new(self.q.topology(), n, s0, s1, d.delta)?;
        r.notes.push(format!("delta_{}", d.method.as_str()));
        if let Some((v, note)) = self.exact_t1(&init)? {
            r = r.with_exact(v, note);
        }
        match (self.q.topology(), &self.spec.graph) {
            (Topology::Complete, _) => {
                let mu = (s0 - s1) as f64 / n as f64;
                if let Ok(m) = margin_asymptotics(n, mu) {
                    r = r.with_dominant(m.dominant_term, "margin_dominant_term");
                }
            }
            (Topology::Star, _) => {
                r = r.with_dominant(star_dominant_term(n, s0)?, "star_dominant_term");
            }
            (_, GraphSource::Er { c, .. }) => {
                if let Ok(v) = er_time_bound(n, *c, s0 as f64 / n as f64) {
                    r = r.with_dominant(v, "er_time_bound");
                }
            }
            _ => {}
        }
        Ok((r, d))
    }

    fn analytic(&self, s0: usize, s1: usize) -> Result<Report> {
        let (r, _) = self.analytic_report(s0, s1)?;
        let mut t = Table::new(&[
            "graph_family",
            "n",
            "s0",
            "s1",
            "delta",
            "bound_t1",
            "bound_t2",
            "bound_total",
            "exact_t1",
            "dominant_term",
            "notes",
        ]);
        self.header(&mut t);
        let family = serde_json::to_value(r.graph_family).expect("serialises");
        t.push(vec![
            family.as_str().unwrap_or("custom").into(),
            r.n.into(),
            r.s0.into(),
            r.s1.into(),
            r.delta.into(),
            r.bound_t1.into(),
            r.bound_t2.into(),
            r.bound_total.into(),
            r.exact_t1.into(),
            r.dominant_term.into(),
            r.notes.join(";").into(),
        ]);
        Ok(Report::Table(t))
    }

    fn survival(&self, s0: usize, s1: usize) -> Result<Report> {
        let n = self.q.n();
        let init = self.init(s0, s1);
        let delta = if s0 > s1 { Some(self.delta(s0, s1)?) } else { None };
        let grid = if self.spec.grid.is_empty() {
            // Up to the phase-1 bound, or 20 time units without one.
            let end = delta
                .as_ref()
                .map_or(20.0, |d| ((n as f64).ln() + 1.0) / d.delta);
            (0..=20).map(|k| end * k as f64 / 20.0).collect()
        } else {
            self.spec.grid.clone()
        };
        let curve = survival_curve(
            self.q,
            &init,
            self.spec.trials,
            self.spec.seed,
            &grid,
            Some(self.t_max(delta.as_ref().map(|d| d.delta))),
            self.spec.execution,
        )?;
        let se1 = curve.phase1_stderr();
        let se2 = curve.phase2_stderr();
        let mut t = Table::new(&[
            "t", "phase1", "phase1_se", "phase2", "phase2_se", "tail_bound",
        ]);
        self.header(&mut t);
        t.meta("trials", curve.trials);
        t.meta("s0", s0);
        t.meta("s1", s1);
        if let Some(d) = &delta {
            t.meta("delta", format_float(d.delta));
            t.meta("delta_method", d.method.as_str());
            t.meta("tail_formula", "min(1, n * exp(-delta * t))");
        }
        for (k, &time) in grid.iter().enumerate() {
            let tail = delta
                .as_ref()
                .map(|d| (n as f64 * (-d.delta * time).exp()).min(1.0));
            t.push(vec![
                time.into(),
                curve.phase1[k].into(),
                se1[k].into(),
                curve.phase2[k].into(),
                se2[k].into(),
                tail.into(),
            ]);
        }
        Ok(Report::Table(t))
    }

    fn sweep(&self) -> Result<Report> {
        let n = self.q.n();
        if self.spec.alpha_grid.is_empty() {
            return Err(Error::InvalidArgument("sweep needs an α grid".into()));
        }
        let mut t = Table::new(&[
            "alpha", "margin", "n", "s0", "s1", "delta", "mean_t1", "ci_t1", "mean_t2", "ci_t2",
            "bound_t1", "exact_t1",
        ]);
        self.header(&mut t);
        t.meta("trials", self.spec.trials);
        t.meta("counts_rounding", "s0 = ceil(alpha * n), s1 = n - s0");
        t.meta("margin", "(s0 - s1) / n");
        t.meta("bound_formula", "theorem_bound: (ln n + 1) / delta");
        let mut methods = Vec::new();
        for &alpha in &self.spec.alpha_grid {
            let (s0, s1) = counts_from_alpha(n, alpha)?;
            if s0 <= s1 {
                return Err(Error::InvalidArgument(format!(
                    "α = {alpha} gives no strict majority at n = {n}"
                )));
            }
            let init = self.init(s0, s1);
            let d = self.delta(s0, s1)?;
            if !methods.contains(&d.method) {
                methods.push(d.method);
            }
            let summary = self.simulate(&init, Some(d.delta))?;
            let exact = self.exact_t1(&init)?;
            t.push(vec![
                alpha.into(),
                ((s0 - s1) as f64 / n as f64).into(),
                n.into(),
                s0.into(),
                s1.into(),
                d.delta.into(),
                summary.mean_t1().into(),
                summary.ci95_t1().into(),
                summary.mean_t2().into(),
                summary.ci95_t2().into(),
                theorem_bound(d.delta, n as f64)?.bound_t1.into(),
                exact.map(|e| e.0).into(),
            ]);
        }
        let names: Vec<&str> = methods.iter().map(|m| m.as_str()).collect();
        t.meta("delta_method", names.join(";"));
        Ok(Report::Table(t))
    }
}
