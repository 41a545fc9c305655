//! Initial population: every simple path when there are few enough,
//! otherwise distinct paths from randomized depth-first searches.

use std::collections::HashSet;

use rand::seq::SliceRandom;

use super::{mutate_path, Chromosome, GaConfig, GaError};
use crate::graph::{NodeId, RouteGraph};
use crate::rng::Rng;

/// Work limit for exhaustive enumeration; past it the graph is treated as
/// having more than `population_size` paths.
const ENUMERATION_STEP_BUDGET: usize = 200_000;

pub fn enumerate_initial_population(
    graph: &RouteGraph,
    source: NodeId,
    dest: NodeId,
    config: &GaConfig,
    rng: &mut Rng,
) -> Result<Vec<Chromosome>, GaError> {
    check_endpoints(graph, source, dest)?;
    let n = config.population_size;
    let reach = graph.hops_to(dest, f64::NEG_INFINITY);
    if reach[source.index()].is_none() {
        return Err(GaError::NoPath { origin: source, dest });
    }
    let can_reach: Vec<bool> = reach.iter().map(Option::is_some).collect();

    let mut population: Vec<Chromosome> = match simple_paths(graph, source, dest, &can_reach, n + 1) {
        Some(paths) if paths.len() <= n => paths
            .into_iter()
            .filter_map(|p| Chromosome::from_path(graph, p))
            .collect(),
        _ => {
            let mut seen = HashSet::new();
            let mut sampled = Vec::with_capacity(n);
            for _ in 0..n * 20 {
                if sampled.len() == n {
                    break;
                }
                let p = random_dfs_path(graph, source, dest, &can_reach, rng);
                if seen.insert(p.clone()) {
                    sampled.extend(Chromosome::from_path(graph, p));
                }
            }
            sampled
        }
    };
    if population.is_empty() {
        return Err(GaError::NoPath { origin: source, dest });
    }
    // Shortfall: top up with mutants of existing members.
    let mut i = 0;
    while population.len() < n {
        let child = mutate_path(graph, &population[i], rng);
        population.push(child);
        i += 1;
    }
    Ok(population)
}

pub(crate) fn check_endpoints(graph: &RouteGraph, source: NodeId, dest: NodeId) -> Result<(), GaError> {
    for node in [source, dest] {
        if !graph.contains(node) {
            return Err(GaError::UnknownNode(node));
        }
    }
    if source == dest {
        return Err(GaError::SameEndpoints(source));
    }
    Ok(())
}

/// All simple paths in deterministic DFS order, or `None` once more than
/// `limit - 1` exist or the step budget runs out.
pub fn simple_paths(
    graph: &RouteGraph,
    source: NodeId,
    dest: NodeId,
    can_reach: &[bool],
    limit: usize,
) -> Option<Vec<Vec<NodeId>>> {
    let mut out = Vec::new();
    let mut on_path = vec![false; graph.id_space()];
    let mut path = vec![source];
    on_path[source.index()] = true;
    let mut stack: Vec<usize> = vec![0];
    let mut steps = 0usize;
    while let Some(next) = stack.last_mut() {
        steps += 1;
        if steps > ENUMERATION_STEP_BUDGET {
            return None;
        }
        let at = *path.last().expect("path mirrors stack");
        let neighbors = graph.neighbors(at);
        if *next >= neighbors.len() {
            stack.pop();
            on_path[at.index()] = false;
            path.pop();
            continue;
        }
        let v = neighbors[*next].0;
        *next += 1;
        if on_path[v.index()] || !can_reach[v.index()] {
            continue;
        }
        if v == dest {
            let mut p = path.clone();
            p.push(v);
            out.push(p);
            if out.len() >= limit {
                return None;
            }
            continue;
        }
        on_path[v.index()] = true;
        path.push(v);
        stack.push(0);
    }
    Some(out)
}

/// Depth-first search with shuffled neighbour order; returns the tree path
/// to `dest`. Assumes `dest` is reachable from `source`.
fn random_dfs_path(
    graph: &RouteGraph,
    source: NodeId,
    dest: NodeId,
    can_reach: &[bool],
    rng: &mut Rng,
) -> Vec<NodeId> {
    let mut visited = vec![false; graph.id_space()];
    visited[source.index()] = true;
    let shuffled = |at: NodeId, rng: &mut Rng| {
        let mut ns: Vec<NodeId> = graph.neighbors(at).iter().map(|&(v, _)| v).collect();
        ns.shuffle(rng);
        ns
    };
    let mut stack: Vec<(NodeId, Vec<NodeId>)> = vec![(source, shuffled(source, rng))];
    while let Some((_, pending)) = stack.last_mut() {
        let Some(v) = pending.pop() else {
            stack.pop();
            continue;
        };
        if visited[v.index()] || !can_reach[v.index()] {
            continue;
        }
        visited[v.index()] = true;
        if v == dest {
            let mut p: Vec<NodeId> = stack.iter().map(|(n, _)| *n).collect();
            p.push(v);
            return p;
        }
        let next = shuffled(v, rng);
        stack.push((v, next));
    }
    Vec::new()
}
