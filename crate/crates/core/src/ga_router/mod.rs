//! Level-2 genetic search for a wide source to destination path.
//!
//! Chromosomes are simple paths. Fitness is each path's bottleneck bandwidth
//! as a share of the population total and drives roulette parent selection.
//! Each generation keeps one elite, carries forward every member within the
//! acceptance threshold of the best, and fills the rest with offspring
//! (crossover or mutation). A population in which every member is within the
//! threshold would be carried forward unchanged, so the run stops there.

mod chromosome;
mod operators;
mod oracle;
mod population;

use std::collections::HashSet;

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng as _;
use thiserror::Error;

pub use chromosome::{fitness_assign, Chromosome};
pub use operators::{crossover_paths, mutate_path, MUTATION_ATTEMPTS};
pub use oracle::{max_bottleneck, widest_path_oracle};
pub use population::{enumerate_initial_population, simple_paths};

use crate::graph::{NodeId, RouteGraph};
use crate::rng::{self, Rng, Stream};

#[derive(Debug, Error, PartialEq)]
pub enum GaError {
    #[error("no path from {origin} to {dest}")]
    NoPath { origin: NodeId, dest: NodeId },
    #[error("node {0} is not in the graph")]
    UnknownNode(NodeId),
    #[error("source and destination are both {0}")]
    SameEndpoints(NodeId),
    #[error("invalid GA configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaConfig {
    pub population_size: usize,
    pub generations: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    /// Members whose bandwidth exceeds this fraction of the best are carried
    /// forward unchanged.
    pub acceptance_threshold: f64,
    pub seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population_size: 20,
            generations: 50,
            crossover_rate: 0.9,
            mutation_rate: 0.1,
            acceptance_threshold: 0.9,
            seed: 0,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<(), GaError> {
        let bad = |m: &str| Err(GaError::InvalidConfig(m.to_string()));
        if self.population_size == 0 {
            return bad("population_size must be positive");
        }
        if self.generations == 0 {
            return bad("generations must be positive");
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) || !(0.0..=1.0).contains(&self.mutation_rate) {
            return bad("crossover and mutation rates must lie in [0, 1]");
        }
        if (self.crossover_rate + self.mutation_rate - 1.0).abs() > 1e-9 {
            return bad("crossover_rate + mutation_rate must equal 1");
        }
        if !(self.acceptance_threshold > 0.0 && self.acceptance_threshold <= 1.0) {
            return bad("acceptance_threshold must lie in (0, 1]");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenerationStats {
    pub generation: usize,
    pub best_bandwidth: f64,
    /// Population share of the best member.
    pub best_fitness: f64,
    /// Mean of bandwidth relative to the best member.
    pub mean_fitness: f64,
    pub distinct_paths: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaResult {
    pub best_path: Chromosome,
    pub generations_used: usize,
    pub converged: bool,
    pub history: Vec<GenerationStats>,
    pub final_population: Vec<Chromosome>,
}

impl GaResult {
    /// Distinct nodes appearing in any member of the final population.
    pub fn nodes_touched(&self) -> usize {
        self.final_population
            .iter()
            .flat_map(|c| c.path.iter().copied())
            .collect::<HashSet<_>>()
            .len()
    }

    /// `generation,best_fitness,mean_fitness,distinct_paths` rows.
    pub fn history_csv(&self) -> String {
        let mut out = String::from("generation,best_fitness,mean_fitness,distinct_paths\n");
        for h in &self.history {
            out.push_str(&format!(
                "{},{:?},{:?},{}\n",
                h.generation, h.best_fitness, h.mean_fitness, h.distinct_paths
            ));
        }
        out
    }
}

pub fn evolve(graph: &RouteGraph, source: NodeId, dest: NodeId, config: &GaConfig) -> Result<GaResult, GaError> {
    evolve_observed(graph, source, dest, config, |_, _| {})
}

/// [`evolve`], calling `observer(generation, population)` once per
/// generation after fitness assignment.
pub fn evolve_observed<F>(
    graph: &RouteGraph,
    source: NodeId,
    dest: NodeId,
    config: &GaConfig,
    mut observer: F,
) -> Result<GaResult, GaError>
where
    F: FnMut(usize, &[Chromosome]),
{
    config.validate()?;
    let mut init_rng = rng::stream(config.seed, Stream::InitialPopulation);
    let mut population = enumerate_initial_population(graph, source, dest, config, &mut init_rng)?;
    let mut rng = rng::stream(config.seed, Stream::Evolution);
    fitness_assign(&mut population);
    let mut best = chromosome::best_of(&population).cloned().ok_or(GaError::NoPath { origin: source, dest })?;
    let mut history = Vec::with_capacity(config.generations);
    let mut generation = 1;
    let converged = loop {
        observer(generation, &population);
        history.push(stats(generation, &population, &best));
        if all_accepted(&population, &best, config.acceptance_threshold) {
            break true;
        }
        if generation >= config.generations {
            break false;
        }
        population = next_generation(graph, &population, &best, config, &mut rng);
        fitness_assign(&mut population);
        if let Some(top) = chromosome::best_of(&population) {
            if top.preference(&best).is_gt() {
                best = top.clone();
            }
        }
        generation += 1;
    };
    Ok(GaResult {
        best_path: best,
        generations_used: generation,
        converged,
        history,
        final_population: population,
    })
}

fn relative(c: &Chromosome, best: &Chromosome) -> f64 {
    c.raw_bandwidth / best.raw_bandwidth
}

fn all_accepted(population: &[Chromosome], best: &Chromosome, threshold: f64) -> bool {
    population.iter().all(|c| relative(c, best) > threshold || c.path == best.path)
}

fn stats(generation: usize, population: &[Chromosome], best: &Chromosome) -> GenerationStats {
    let best_fitness = population
        .iter()
        .find(|c| c.path == best.path)
        .map_or(0.0, |c| c.fitness);
    let mean_fitness = population.iter().map(|c| relative(c, best)).sum::<f64>() / population.len() as f64;
    let distinct_paths = population.iter().map(|c| &c.path).collect::<HashSet<_>>().len();
    GenerationStats {
        generation,
        best_bandwidth: best.raw_bandwidth,
        best_fitness,
        mean_fitness,
        distinct_paths,
    }
}

fn next_generation(
    graph: &RouteGraph,
    population: &[Chromosome],
    best: &Chromosome,
    config: &GaConfig,
    rng: &mut Rng,
) -> Vec<Chromosome> {
    let n = config.population_size;
    let mut next = Vec::with_capacity(n);
    next.push(best.clone());
    let mut elite_seen = false;
    for c in population {
        if next.len() >= n {
            break;
        }
        if !elite_seen && c.path == best.path {
            elite_seen = true;
            continue;
        }
        if relative(c, best) > config.acceptance_threshold {
            next.push(c.clone());
        }
    }
    let weights = WeightedIndex::new(population.iter().map(|c| c.fitness)).ok();
    let pick = |rng: &mut Rng| match &weights {
        Some(w) => &population[w.sample(rng)],
        None => &population[rng.gen_range(0..population.len())],
    };
    while next.len() < n {
        let child = if rng.gen_bool(config.crossover_rate) {
            let a = pick(rng);
            let b = pick(rng);
            crossover_paths(graph, a, b, rng)
        } else {
            let p = pick(rng);
            mutate_path(graph, p, rng)
        };
        next.push(child);
    }
    next
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(i: u32) -> NodeId {
        NodeId(i)
    }

    #[test]
    fn single_path_converges_immediately() {
        let g = RouteGraph::from_edges(vec![true; 3], [(n(0), n(1), 30.0), (n(1), n(2), 20.0)]);
        let r = evolve(&g, n(0), n(2), &GaConfig::default()).unwrap();
        assert!(r.converged);
        assert_eq!(r.generations_used, 1);
        assert_eq!(r.best_path.path, vec![n(0), n(1), n(2)]);
        assert_eq!(r.history[0].mean_fitness, 1.0);
    }

    #[test]
    fn finds_widest_in_four_node_fixture() {
        let mut edges = Vec::new();
        for a in 0..4u32 {
            for b in 0..4u32 {
                if a != b {
                    edges.push((n(a), n(b), 50.0 - (a + b) as f64));
                }
            }
        }
        for e in edges.iter_mut() {
            if (e.0, e.1) == (n(0), n(2)) || (e.0, e.1) == (n(2), n(3)) {
                e.2 = 80.0;
            }
        }
        let g = RouteGraph::from_edges(vec![true; 4], edges);
        let oracle = widest_path_oracle(&g, n(0), n(3)).unwrap();
        assert_eq!(oracle.path, vec![n(0), n(2), n(3)]);
        for seed in 0..10 {
            let cfg = GaConfig { seed, ..GaConfig::default() };
            let r = evolve(&g, n(0), n(3), &cfg).unwrap();
            assert_eq!(r.best_path.path, oracle.path);
        }
    }

    #[test]
    fn config_validation() {
        assert!(GaConfig { crossover_rate: 0.8, ..GaConfig::default() }.validate().is_err());
        assert!(GaConfig { acceptance_threshold: 0.0, ..GaConfig::default() }.validate().is_err());
        assert!(GaConfig { population_size: 0, ..GaConfig::default() }.validate().is_err());
        assert!(GaConfig::default().validate().is_ok());
    }

    #[test]
    fn history_csv_has_a_row_per_generation() {
        let g = RouteGraph::from_edges(vec![true; 2], [(n(0), n(1), 1.0)]);
        let r = evolve(&g, n(0), n(1), &GaConfig::default()).unwrap();
        let csv = r.history_csv();
        assert_eq!(csv.lines().count(), 1 + r.history.len());
        assert!(csv.starts_with("generation,best_fitness,mean_fitness,distinct_paths"));
    }
}
