//! Exact widest (maximum bottleneck) path, used to check the GA.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{Chromosome, GaError};
use crate::graph::{NodeId, RouteGraph};

#[derive(PartialEq)]
struct Entry(f64, NodeId);

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then_with(|| other.1.cmp(&self.1))
    }
}

/// Maximum achievable bottleneck bandwidth from `source` to `dest`.
pub fn max_bottleneck(graph: &RouteGraph, source: NodeId, dest: NodeId) -> Option<f64> {
    let mut width = vec![f64::NEG_INFINITY; graph.id_space()];
    let mut done = vec![false; graph.id_space()];
    width[source.index()] = f64::INFINITY;
    let mut heap = BinaryHeap::from([Entry(f64::INFINITY, source)]);
    while let Some(Entry(w, u)) = heap.pop() {
        if done[u.index()] {
            continue;
        }
        done[u.index()] = true;
        if u == dest {
            return Some(w);
        }
        for &(v, bw) in graph.neighbors(u) {
            let cand = w.min(bw);
            if !done[v.index()] && cand > width[v.index()] {
                width[v.index()] = cand;
                heap.push(Entry(cand, v));
            }
        }
    }
    None
}

/// The widest simple path; among equally wide paths the one with the fewest
/// hops, then the lexicographically smallest node sequence.
pub fn widest_path_oracle(graph: &RouteGraph, source: NodeId, dest: NodeId) -> Result<Chromosome, GaError> {
    for n in [source, dest] {
        if !graph.contains(n) {
            return Err(GaError::UnknownNode(n));
        }
    }
    if source == dest {
        return Err(GaError::SameEndpoints(source));
    }
    let best = max_bottleneck(graph, source, dest).ok_or(GaError::NoPath { origin: source, dest })?;
    // Shortest path over links at least as wide as the optimum, greedy on ids.
    let dist = graph.hops_to(dest, best);
    let mut path = vec![source];
    let mut at = source;
    while at != dest {
        let need = dist[at.index()].and_then(|d| d.checked_sub(1)).ok_or(GaError::NoPath { origin: source, dest })?;
        at = graph
            .neighbors(at)
            .iter()
            .find(|&&(v, bw)| bw >= best && dist[v.index()] == Some(need))
            .map(|&(v, _)| v)
            .ok_or(GaError::NoPath { origin: source, dest })?;
        path.push(at);
    }
    let mut c = Chromosome::from_path(graph, path).ok_or(GaError::NoPath { origin: source, dest })?;
    c.fitness = 1.0;
    Ok(c)
}
