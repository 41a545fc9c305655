//! Level-1 node grading and region-wise survivor selection.
//!
//! Each node runs through an ordered predicate chain: alive, sparse in-degree,
//! uncongested, resourced, low delay. The first predicate that fails fixes
//! its priority class (1 when everything passes, 6 when the node is dead), and
//! the class maps onto the `-3..=+3` grade scale where 0 is the best node.

use std::collections::BTreeSet;
use std::fmt;
use std::io::Write;
use std::path::Path;

use thiserror::Error;

use crate::graph::{NodeId, RouteGraph};
use crate::queueing::{congestion_score, node_queue};
use crate::topology::{Link, NodeAttributes, Topology};

#[derive(Debug, Error, PartialEq)]
pub enum GradingError {
    #[error("region {0} has no surviving nodes")]
    RegionStarvation(usize),
    #[error("survivor set is empty")]
    EmptySurvivors,
    #[error("invalid grading configuration: {0}")]
    InvalidConfig(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Predicate {
    /// Network lifetime above threshold.
    Lifetime,
    /// In-degree below the density limit.
    Density,
    /// No traffic congestion.
    Congestion,
    /// Resources available.
    Resource,
    /// No queueing delay.
    Delay,
}

impl Predicate {
    pub const CHAIN: [Predicate; 5] = [
        Predicate::Lifetime,
        Predicate::Density,
        Predicate::Congestion,
        Predicate::Resource,
        Predicate::Delay,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Predicate::Lifetime => "NL",
            Predicate::Density => "ND",
            Predicate::Congestion => "TC",
            Predicate::Resource => "RA",
            Predicate::Delay => "DELAY",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradingConfig {
    pub nl_threshold: f64,
    /// Density passes when in-degree is strictly below this.
    pub nd_limit: usize,
    pub tc_threshold: f64,
    pub ra_threshold: f64,
    pub delay_threshold_s: f64,
    /// Grade for priority classes 1 through 6.
    pub grade_map: [i8; 6],
    /// Inclusive grade window for survivors.
    pub window: (i8, i8),
    /// How many of the best priority classes present in a region are kept.
    pub top_classes: usize,
}

impl Default for GradingConfig {
    fn default() -> Self {
        GradingConfig {
            nl_threshold: 0.1,
            nd_limit: 5,
            tc_threshold: 0.7,
            ra_threshold: 0.3,
            delay_threshold_s: 0.05,
            grade_map: [0, 1, 2, 3, 3, -3],
            window: (0, 2),
            top_classes: 3,
        }
    }
}

impl GradingConfig {
    pub fn validate(&self) -> Result<(), GradingError> {
        let bad = |m: &str| Err(GradingError::InvalidConfig(m.to_string()));
        for (name, v) in [
            ("nl_threshold", self.nl_threshold),
            ("tc_threshold", self.tc_threshold),
            ("ra_threshold", self.ra_threshold),
            ("delay_threshold", self.delay_threshold_s),
        ] {
            if !v.is_finite() {
                return bad(&format!("{name} must be finite"));
            }
        }
        if self.grade_map.iter().any(|g| !(-3..=3).contains(g)) {
            return bad("grades must lie in -3..=3");
        }
        if self.window.0 > self.window.1 {
            return bad("grade window is empty");
        }
        if self.top_classes == 0 {
            return bad("top_classes must be positive");
        }
        Ok(())
    }

    pub fn grade_of(&self, priority: u8) -> i8 {
        self.grade_map[usize::from(priority.clamp(1, 6)) - 1]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradeReport {
    /// 1 (best) through 6.
    pub priority: u8,
    pub grade: i8,
    /// Predicates in evaluation order up to and including the first failure.
    pub reasons: Vec<(Predicate, bool)>,
}

impl GradeReport {
    pub fn reasons_string(&self) -> String {
        self.reasons
            .iter()
            .map(|(p, ok)| format!("{}={}", p.tag(), if *ok { "pass" } else { "fail" }))
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Display for GradeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P={} grade={:+} [{}]", self.priority, self.grade, self.reasons_string())
    }
}

/// Priority from the five predicate outcomes in chain order. The first failed
/// predicate decides: lifetime gives 6, density 5, congestion 4, resource 3,
/// delay 2; all passing gives 1.
pub fn priority_from_outcomes(outcomes: [bool; 5]) -> u8 {
    match outcomes.iter().position(|ok| !ok) {
        Some(first_failure) => 6 - first_failure as u8,
        None => 1,
    }
}

pub fn predicate_outcomes(attrs: &NodeAttributes, in_degree: usize, config: &GradingConfig) -> [bool; 5] {
    // An unstable queue counts as the worst possible delay.
    let delay_ok = node_queue(attrs)
        .map(|q| q.mean_delay_s < config.delay_threshold_s)
        .unwrap_or(false);
    [
        attrs.network_lifetime > config.nl_threshold,
        in_degree < config.nd_limit,
        congestion_score(attrs) < config.tc_threshold,
        attrs.resource_allocated > config.ra_threshold,
        delay_ok,
    ]
}

pub fn priority_of(attrs: &NodeAttributes, in_degree: usize, config: &GradingConfig) -> GradeReport {
    let outcomes = predicate_outcomes(attrs, in_degree, config);
    let priority = priority_from_outcomes(outcomes);
    let evaluated = outcomes.iter().position(|ok| !ok).map_or(5, |i| i + 1);
    let reasons = Predicate::CHAIN
        .iter()
        .zip(outcomes)
        .take(evaluated)
        .map(|(&p, ok)| (p, ok))
        .collect();
    GradeReport { priority, grade: config.grade_of(priority), reasons }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeGrade {
    pub node: NodeId,
    pub region: usize,
    pub report: GradeReport,
}

/// Grades every node, in id order.
pub fn grade_topology(topology: &Topology, config: &GradingConfig) -> Vec<NodeGrade> {
    let in_degrees = topology.in_degrees();
    topology
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, attrs)| {
            let node = NodeId::from(i);
            NodeGrade {
                node,
                region: topology.region_of(node).unwrap_or(0),
                report: priority_of(attrs, in_degrees[i], config),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionSummary {
    pub region: usize,
    pub kept: usize,
    pub dropped: usize,
    pub mean_grade: f64,
}

/// Vertex-induced subgraph on the nodes that passed Level-1.
#[derive(Debug, Clone, PartialEq)]
pub struct SurvivorGraph {
    pub kept_nodes: Vec<NodeId>,
    pub kept_edges: Vec<Link>,
    pub region_summaries: Vec<RegionSummary>,
    /// Grade of each entry of `kept_nodes`.
    pub kept_grades: Vec<i8>,
    /// Full per-node grading the selection was made from.
    pub grades: Vec<NodeGrade>,
    graph: RouteGraph,
}

impl SurvivorGraph {
    pub fn graph(&self) -> &RouteGraph {
        &self.graph
    }

    pub fn contains(&self, node: NodeId) -> bool {
        self.graph.contains(node)
    }

    pub fn len(&self) -> usize {
        self.kept_nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kept_nodes.is_empty()
    }

    /// Route graph on the survivors plus `extra` nodes, still vertex-induced.
    pub fn route_graph_with(&self, topology: &Topology, extra: &[NodeId]) -> RouteGraph {
        let mut keep = vec![false; topology.node_count()];
        for &n in self.kept_nodes.iter().chain(extra) {
            keep[n.index()] = true;
        }
        topology.induced_route_graph(&keep)
    }
}

/// Level-1 selection. Per region, nodes in the `top_classes` best priority
/// classes present are candidates; candidates whose grade falls inside the
/// window survive. Edges are restricted to survivors.
pub fn level1_select(topology: &Topology, config: &GradingConfig) -> Result<SurvivorGraph, GradingError> {
    config.validate()?;
    let grades = grade_topology(topology, config);
    let (lo, hi) = config.window;
    let mut keep = vec![false; topology.node_count()];
    let mut region_summaries = Vec::with_capacity(topology.region_count());

    for region in 0..topology.region_count() {
        let members: Vec<&NodeGrade> = grades.iter().filter(|g| g.region == region).collect();
        let classes: BTreeSet<u8> = members.iter().map(|g| g.report.priority).collect();
        let top: BTreeSet<u8> = classes.into_iter().take(config.top_classes).collect();
        let mut kept = 0usize;
        let mut grade_sum = 0i64;
        for g in &members {
            let grade = g.report.grade;
            if top.contains(&g.report.priority) && (lo..=hi).contains(&grade) {
                keep[g.node.index()] = true;
                kept += 1;
                grade_sum += i64::from(grade);
            }
        }
        if kept == 0 {
            return Err(GradingError::RegionStarvation(region));
        }
        region_summaries.push(RegionSummary {
            region,
            kept,
            dropped: members.len() - kept,
            mean_grade: grade_sum as f64 / kept as f64,
        });
    }

    let kept_nodes: Vec<NodeId> = (0..keep.len()).filter(|&i| keep[i]).map(NodeId::from).collect();
    let kept_grades = kept_nodes.iter().map(|n| grades[n.index()].report.grade).collect();
    let kept_edges = topology
        .links()
        .iter()
        .filter(|l| keep[l.from.index()] && keep[l.to.index()])
        .copied()
        .collect();
    let graph = topology.induced_route_graph(&keep);
    Ok(SurvivorGraph { kept_nodes, kept_edges, region_summaries, kept_grades, grades, graph })
}

pub fn mean_grade(survivors: &SurvivorGraph) -> Result<f64, GradingError> {
    if survivors.kept_grades.is_empty() {
        return Err(GradingError::EmptySurvivors);
    }
    let sum: i64 = survivors.kept_grades.iter().map(|&g| i64::from(g)).sum();
    Ok(sum as f64 / survivors.kept_grades.len() as f64)
}

/// Writes `node,region,priority,grade,reasons` rows.
pub fn write_grade_csv(grades: &[NodeGrade], path: &Path) -> Result<(), GradingError> {
    let io = |e: std::io::Error| GradingError::Io { path: path.display().to_string(), message: e.to_string() };
    let mut out = std::io::BufWriter::new(std::fs::File::create(path).map_err(io)?);
    writeln!(out, "node,region,priority,grade,reasons").map_err(io)?;
    for g in grades {
        writeln!(
            out,
            "{},{},{},{},{}",
            g.node, g.region, g.report.priority, g.report.grade, g.report.reasons_string()
        )
        .map_err(io)?;
    }
    out.flush().map_err(io)
}
