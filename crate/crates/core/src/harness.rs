//! Graded vs. non-graded comparison runs and their CSV report.
//!
//! For every `(size, seed)` cell one topology is generated and both pipelines
//! see it with the same GA seed: the graded pipeline runs Level-1 selection
//! and then the GA on the survivors, the non-graded pipeline runs the GA on
//! the whole topology. Cells are independent and run in parallel; results
//! are merged in input order so the report does not depend on scheduling.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::config::RunConfig;
use crate::ga_router::{evolve, GaConfig, GaError, GaResult};
use crate::grading::{level1_select, mean_grade, GradingError};
use crate::graph::NodeId;
use crate::knowledge_base::{self, KbError, KnowledgeEntry};
use crate::queueing::{channel_delay, Channel, DelayBreakdown, QueueError};
use crate::rng::mix_seed;
use crate::topology::{generate_with, save_topology, Topology, TopologyError};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("topology: {0}")]
    Topology(#[from] TopologyError),
    #[error("knowledge base: {0}")]
    Kb(#[from] KbError),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("report line {line}: {message}")]
    Report { line: usize, message: String },
    #[error("no records to report")]
    EmptyReport,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Graded,
    Nongraded,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Graded => "graded",
            Mode::Nongraded => "nongraded",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "graded" => Ok(Mode::Graded),
            "nongraded" => Ok(Mode::Nongraded),
            other => Err(format!("unknown mode '{}'", other)),
        }
    }
}

/// One report row.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub total_nodes: usize,
    pub mode: Mode,
    /// Graded: nodes in the routed survivor graph. Non-graded: distinct nodes
    /// in the final GA population.
    pub nodes_selected: usize,
    pub route_length: usize,
    pub generations_used: usize,
    pub converged: bool,
    pub best_bandwidth: f64,
    pub mean_grade: Option<f64>,
    /// Present only when timing is enabled, since it is not reproducible.
    pub wall_time_ms: Option<f64>,
    pub error: Option<String>,
}

impl ExperimentRecord {
    fn failed(total_nodes: usize, mode: Mode, tag: &str) -> Self {
        ExperimentRecord {
            total_nodes,
            mode,
            nodes_selected: 0,
            route_length: 0,
            generations_used: 0,
            converged: false,
            best_bandwidth: 0.0,
            mean_grade: None,
            wall_time_ms: None,
            error: Some(tag.to_string()),
        }
    }

    fn succeeded(total_nodes: usize, mode: Mode, nodes_selected: usize, result: &GaResult) -> Self {
        ExperimentRecord {
            total_nodes,
            mode,
            nodes_selected,
            route_length: result.best_path.hops(),
            generations_used: result.generations_used,
            converged: result.converged,
            best_bandwidth: result.best_path.raw_bandwidth,
            mean_grade: None,
            wall_time_ms: None,
            error: None,
        }
    }

    pub fn is_failed(&self) -> bool {
        self.error.is_some()
    }
}

/// Both runs of one `(size, seed)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub size: usize,
    pub seed: u64,
    pub source: NodeId,
    pub dest: NodeId,
    pub graded_fingerprint: u64,
    pub nongraded_fingerprint: u64,
    pub graded: ExperimentRecord,
    pub nongraded: ExperimentRecord,
    pub graded_path: Option<Vec<NodeId>>,
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub timing: bool,
    pub topology_dir: Option<PathBuf>,
    pub kb: Option<PathBuf>,
}

pub fn topology_for(size: usize, seed: u64, config: &RunConfig) -> Result<Topology, TopologyError> {
    generate_with(&config.topology.generator_for(size), seed)
}

/// Lowest-id node of the first region and lowest-id node of the last region
/// (the two highest ids when there is only one region).
pub fn endpoints(topology: &Topology) -> (NodeId, NodeId) {
    let first = topology.region_members(0);
    let last = topology.region_members(topology.region_count() - 1);
    if topology.region_count() == 1 {
        (first[0], first[first.len() - 1])
    } else {
        (first[0], last[0])
    }
}

pub fn ga_config_for(seed: u64, config: &RunConfig) -> GaConfig {
    GaConfig { seed: mix_seed(config.ga.seed, seed), ..config.ga.clone() }
}

fn error_tag(e: &GaError) -> &'static str {
    match e {
        GaError::NoPath { .. } => "no_path",
        GaError::UnknownNode(_) => "unknown_node",
        GaError::SameEndpoints(_) => "same_endpoints",
        GaError::InvalidConfig(_) => "invalid_config",
    }
}

/// Level-1 then GA over the survivors. The endpoints always take part.
pub fn run_graded(
    topology: &Topology,
    source: NodeId,
    dest: NodeId,
    config: &RunConfig,
    ga: &GaConfig,
) -> (ExperimentRecord, Option<GaResult>) {
    let total = topology.node_count();
    let survivors = match level1_select(topology, &config.grading) {
        Ok(s) => s,
        Err(GradingError::RegionStarvation(_)) => {
            return (ExperimentRecord::failed(total, Mode::Graded, "region_starvation"), None)
        }
        Err(_) => return (ExperimentRecord::failed(total, Mode::Graded, "grading_error"), None),
    };
    let grade = mean_grade(&survivors).ok();
    let graph = survivors.route_graph_with(topology, &[source, dest]);
    let selected = graph.node_count();
    match evolve(&graph, source, dest, ga) {
        Ok(result) => {
            let mut rec = ExperimentRecord::succeeded(total, Mode::Graded, selected, &result);
            rec.mean_grade = grade;
            (rec, Some(result))
        }
        Err(e) => {
            let mut rec = ExperimentRecord::failed(total, Mode::Graded, error_tag(&e));
            rec.nodes_selected = selected;
            rec.mean_grade = grade;
            (rec, None)
        }
    }
}

pub fn run_nongraded(
    topology: &Topology,
    source: NodeId,
    dest: NodeId,
    ga: &GaConfig,
) -> (ExperimentRecord, Option<GaResult>) {
    let total = topology.node_count();
    match evolve(&topology.route_graph(), source, dest, ga) {
        Ok(result) => {
            let rec = ExperimentRecord::succeeded(total, Mode::Nongraded, result.nodes_touched(), &result);
            (rec, Some(result))
        }
        Err(e) => (ExperimentRecord::failed(total, Mode::Nongraded, error_tag(&e)), None),
    }
}

fn run_cell(size: usize, seed: u64, config: &RunConfig, timing: bool) -> Result<(Cell, Topology), TopologyError> {
    let topology = topology_for(size, seed, config)?;
    let (source, dest) = endpoints(&topology);
    let ga = ga_config_for(seed, config);

    let started = Instant::now();
    let (mut graded, graded_result) = run_graded(&topology, source, dest, config, &ga);
    let graded_ms = started.elapsed().as_secs_f64() * 1e3;
    let graded_fingerprint = topology.fingerprint();

    let started = Instant::now();
    let (mut nongraded, _) = run_nongraded(&topology, source, dest, &ga);
    let nongraded_ms = started.elapsed().as_secs_f64() * 1e3;
    let nongraded_fingerprint = topology.fingerprint();

    if timing {
        graded.wall_time_ms = Some(graded_ms);
        nongraded.wall_time_ms = Some(nongraded_ms);
    }
    let cell = Cell {
        size,
        seed,
        source,
        dest,
        graded_fingerprint,
        nongraded_fingerprint,
        graded,
        nongraded,
        graded_path: graded_result.map(|r| r.best_path.path),
    };
    Ok((cell, topology))
}

/// Runs every `(size, seed)` cell. Failures inside a pipeline become failed
/// rows; only invalid parameters and I/O abort the run.
pub fn run_comparison(
    sizes: &[usize],
    seeds: &[u64],
    config: &RunConfig,
    options: &RunOptions,
) -> Result<Vec<Cell>, HarnessError> {
    if let Some(&bad) = sizes.iter().find(|&&s| s < 4) {
        return Err(HarnessError::InvalidArgument(format!("size {} is below 4", bad)));
    }
    config.validate().map_err(|e| HarnessError::InvalidArgument(e.to_string()))?;
    let jobs: Vec<(usize, u64)> = sizes.iter().flat_map(|&s| seeds.iter().map(move |&k| (s, k))).collect();
    let outcomes: Vec<Result<(Cell, Topology), TopologyError>> = jobs
        .par_iter()
        .map(|&(size, seed)| run_cell(size, seed, config, options.timing))
        .collect();

    let mut cells = Vec::with_capacity(outcomes.len());
    let mut counter = match &options.kb {
        Some(store) => knowledge_base::next_run_counter(store)?,
        None => 0,
    };
    if let Some(dir) = &options.topology_dir {
        std::fs::create_dir_all(dir).map_err(|e| HarnessError::Io {
            path: dir.display().to_string(),
            message: e.to_string(),
        })?;
    }
    for outcome in outcomes {
        let (cell, topology) = outcome?;
        if let Some(dir) = &options.topology_dir {
            save_topology(&topology, &dir.join(format!("topology_{}_{}.txt", cell.size, cell.seed)))?;
        }
        if let (Some(store), Some(path)) = (&options.kb, &cell.graded_path) {
            let entry = KnowledgeEntry {
                topology_fingerprint: cell.graded_fingerprint,
                source: cell.source,
                dest: cell.dest,
                best_path: path.clone(),
                raw_bandwidth: cell.graded.best_bandwidth,
                mean_grade: cell.graded.mean_grade.unwrap_or(0.0),
                recorded_at: counter,
            };
            if knowledge_base::record(&entry, store)? {
                counter += 1;
            }
        }
        cells.push(cell);
    }
    Ok(cells)
}

/// All records of `cells`, sorted by `(total_nodes, mode)`, seed order kept.
pub fn records(cells: &[Cell]) -> Vec<ExperimentRecord> {
    let mut out: Vec<ExperimentRecord> = cells
        .iter()
        .flat_map(|c| [c.graded.clone(), c.nongraded.clone()])
        .collect();
    out.sort_by_key(|r| (r.total_nodes, r.mode));
    out
}

pub const REPORT_HEADER: [&str; 10] = [
    "total_nodes",
    "mode",
    "nodes_selected",
    "route_length",
    "generations_used",
    "converged",
    "best_bandwidth",
    "mean_grade",
    "wall_time_ms",
    "error",
];

pub fn report_string(records: &[ExperimentRecord]) -> Result<String, HarnessError> {
    if records.is_empty() {
        return Err(HarnessError::EmptyReport);
    }
    let mut sorted = records.to_vec();
    sorted.sort_by_key(|r| (r.total_nodes, r.mode));
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| HarnessError::Io { path: "<report>".into(), message: e.to_string() };
    w.write_record(REPORT_HEADER).map_err(csv_err)?;
    let opt = |v: Option<f64>| v.map(|x| format!("{:?}", x)).unwrap_or_default();
    for r in &sorted {
        w.write_record([
            r.total_nodes.to_string(),
            r.mode.to_string(),
            r.nodes_selected.to_string(),
            r.route_length.to_string(),
            r.generations_used.to_string(),
            r.converged.to_string(),
            format!("{:?}", r.best_bandwidth),
            opt(r.mean_grade),
            opt(r.wall_time_ms),
            r.error.clone().unwrap_or_default(),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| HarnessError::Io { path: "<report>".into(), message: e.to_string() })?;
    String::from_utf8(bytes).map_err(|e| HarnessError::Io { path: "<report>".into(), message: e.to_string() })
}

pub fn emit_report(records: &[ExperimentRecord], out_path: &Path) -> Result<(), HarnessError> {
    let text = report_string(records)?;
    std::fs::write(out_path, text).map_err(|e| HarnessError::Io {
        path: out_path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn parse_report(text: &str) -> Result<Vec<ExperimentRecord>, HarnessError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| HarnessError::Report { line: 1, message: e.to_string() })?;
    if header.iter().ne(REPORT_HEADER.iter().copied()) {
        return Err(HarnessError::Report { line: 1, message: "unexpected header".into() });
    }
    let mut out = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let line = i + 2;
        let row = row.map_err(|e| HarnessError::Report { line, message: e.to_string() })?;
        let field = |k: usize| row.get(k).unwrap_or("");
        let bad = |k: usize| HarnessError::Report { line, message: format!("bad {} '{}'", REPORT_HEADER[k], field(k)) };
        let opt = |k: usize| -> Result<Option<f64>, HarnessError> {
            if field(k).is_empty() {
                Ok(None)
            } else {
                field(k).parse().map(Some).map_err(|_| bad(k))
            }
        };
        out.push(ExperimentRecord {
            total_nodes: field(0).parse().map_err(|_| bad(0))?,
            mode: field(1).parse().map_err(|_| bad(1))?,
            nodes_selected: field(2).parse().map_err(|_| bad(2))?,
            route_length: field(3).parse().map_err(|_| bad(3))?,
            generations_used: field(4).parse().map_err(|_| bad(4))?,
            converged: field(5).parse().map_err(|_| bad(5))?,
            best_bandwidth: field(6).parse().map_err(|_| bad(6))?,
            mean_grade: opt(7)?,
            wall_time_ms: opt(8)?,
            error: Some(field(9).to_string()).filter(|s| !s.is_empty()),
        });
    }
    Ok(out)
}

/// Parses `1..10` (inclusive) or `1,2,5` or a mix such as `1..3,7`.
pub fn parse_list(list: &str) -> Result<Vec<u64>, HarnessError> {
    let mut out = Vec::new();
    for part in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || HarnessError::InvalidArgument(format!("bad list element '{}'", part));
        if let Some((a, b)) = part.split_once("..") {
            let (a, b): (u64, u64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    if out.is_empty() {
        return Err(HarnessError::InvalidArgument("empty list".into()));
    }
    Ok(out)
}

/// Delay breakdown with the `source -> dest` external demand `gamma(s, d)`
/// routed over `path` on top of background load. Background load on a link
/// is the transmitting node's arrival rate split evenly over its out-links.
pub fn route_delay(topology: &Topology, path: &[NodeId]) -> Result<DelayBreakdown, QueueError> {
    let out_degree = topology.out_degrees();
    let demand = match (path.first(), path.last()) {
        (Some(&s), Some(&d)) if s != d => topology.gamma(s, d),
        _ => 0.0,
    };
    let on_path: std::collections::HashSet<(NodeId, NodeId)> = path.windows(2).map(|w| (w[0], w[1])).collect();
    let channels: Vec<Channel> = topology
        .links()
        .iter()
        .map(|l| {
            let tx = &topology.nodes()[l.from.index()];
            let background = tx.arrival_rate_lambda / out_degree[l.from.index()].max(1) as f64;
            let extra = if on_path.contains(&(l.from, l.to)) { demand } else { 0.0 };
            Channel { lambda: background + extra, service_rate: tx.service_rate_mu * tx.capacity }
        })
        .collect();
    channel_delay(&channels, topology.gamma_total())
}
