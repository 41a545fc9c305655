use std::cmp::Ordering;

use crate::graph::{NodeId, RouteGraph};

/// A loop-free source to destination path.
#[derive(Debug, Clone, PartialEq)]
pub struct Chromosome {
    pub path: Vec<NodeId>,
    /// Bottleneck (minimum) link bandwidth along the path.
    pub raw_bandwidth: f64,
    /// Share of the population's total bandwidth; set by [`fitness_assign`].
    pub fitness: f64,
}

impl Chromosome {
    /// `None` unless `path` is a simple path over edges of `graph`.
    pub fn from_path(graph: &RouteGraph, path: Vec<NodeId>) -> Option<Self> {
        let raw_bandwidth = graph.path_bottleneck(&path)?;
        Some(Chromosome { path, raw_bandwidth, fitness: 0.0 })
    }

    pub fn source(&self) -> NodeId {
        self.path[0]
    }

    pub fn dest(&self) -> NodeId {
        self.path[self.path.len() - 1]
    }

    pub fn hops(&self) -> usize {
        self.path.len() - 1
    }

    pub fn is_valid_in(&self, graph: &RouteGraph) -> bool {
        graph.path_bottleneck(&self.path) == Some(self.raw_bandwidth)
    }

    /// Route preference: wider bottleneck, then fewer hops, then the
    /// lexicographically smaller node sequence. `Greater` means better.
    pub fn preference(&self, other: &Chromosome) -> Ordering {
        self.raw_bandwidth
            .total_cmp(&other.raw_bandwidth)
            .then_with(|| other.path.len().cmp(&self.path.len()))
            .then_with(|| other.path.cmp(&self.path))
    }
}

/// Sets each fitness to `raw_bandwidth / sum(raw_bandwidth)`.
pub fn fitness_assign(population: &mut [Chromosome]) {
    let total: f64 = population.iter().map(|c| c.raw_bandwidth).sum();
    for c in population.iter_mut() {
        c.fitness = c.raw_bandwidth / total;
    }
}

pub(crate) fn best_of(population: &[Chromosome]) -> Option<&Chromosome> {
    population.iter().max_by(|a, b| a.preference(b))
}
