use gradroute::ga_router::max_bottleneck;
use gradroute::rng::{self, Stream};
use gradroute::{
    crossover_paths, enumerate_initial_population, evolve, generate_topology, mutate_path, widest_path_oracle,
    Chromosome, GaConfig, GaError, NodeId, RouteGraph,
};
use proptest::prelude::*;

fn all_simple_paths(graph: &RouteGraph, source: NodeId, dest: NodeId) -> Vec<Vec<NodeId>> {
    fn walk(graph: &RouteGraph, path: &mut Vec<NodeId>, dest: NodeId, out: &mut Vec<Vec<NodeId>>) {
        let at = *path.last().unwrap();
        if at == dest {
            out.push(path.clone());
            return;
        }
        for &(next, _) in graph.neighbors(at) {
            if !path.contains(&next) {
                path.push(next);
                walk(graph, path, dest, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(graph, &mut vec![source], dest, &mut out);
    out
}

fn bottleneck(graph: &RouteGraph, path: &[NodeId]) -> f64 {
    path.windows(2).map(|w| graph.bandwidth(w[0], w[1]).unwrap()).fold(f64::INFINITY, f64::min)
}

fn random_graph(n: usize, density: f64, seed: u64) -> RouteGraph {
    generate_topology(n, 1, density, seed).unwrap().route_graph()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn oracle_agrees_with_exhaustive_search(n in 3usize..9, density in 0.2f64..=1.0, seed in any::<u64>()) {
        let g = random_graph(n, density, seed);
        let (s, d) = (NodeId(0), NodeId(n as u32 - 1));
        let paths = all_simple_paths(&g, s, d);
        let best = paths.iter().map(|p| bottleneck(&g, p)).fold(f64::NEG_INFINITY, f64::max);
        let fewest = paths.iter().filter(|p| bottleneck(&g, p) == best).map(|p| p.len()).min().unwrap();
        let o = widest_path_oracle(&g, s, d).unwrap();
        prop_assert_eq!(o.raw_bandwidth, best);
        prop_assert_eq!(o.path.len(), fewest);
        prop_assert_eq!(max_bottleneck(&g, s, d), Some(best));
    }

    #[test]
    fn operators_keep_paths_simple(n in 4usize..14, seed in any::<u64>()) {
        let g = random_graph(n, 0.5, seed);
        let (s, d) = (NodeId(0), NodeId(n as u32 - 1));
        let cfg = GaConfig { seed, ..GaConfig::default() };
        let mut r = rng::stream(seed, Stream::Evolution);
        let pop = enumerate_initial_population(&g, s, d, &cfg, &mut r).unwrap();
        prop_assert_eq!(pop.len(), cfg.population_size);
        for i in 0..pop.len() {
            let a = &pop[i];
            let b = &pop[(i + 1) % pop.len()];
            for child in [crossover_paths(&g, a, b, &mut r), mutate_path(&g, a, &mut r)] {
                prop_assert!(child.is_valid_in(&g));
                prop_assert_eq!(child.source(), s);
                prop_assert_eq!(child.dest(), d);
                let mut seen = child.path.clone();
                seen.sort();
                seen.dedup();
                prop_assert_eq!(seen.len(), child.path.len());
            }
        }
    }

    #[test]
    fn evolve_is_deterministic_and_never_beats_oracle(n in 4usize..16, seed in any::<u64>()) {
        let g = random_graph(n, 0.4, seed);
        let (s, d) = (NodeId(0), NodeId(n as u32 - 1));
        let cfg = GaConfig { seed, ..GaConfig::default() };
        let a = evolve(&g, s, d, &cfg).unwrap();
        let b = evolve(&g, s, d, &cfg).unwrap();
        prop_assert_eq!(&a, &b);
        let o = widest_path_oracle(&g, s, d).unwrap();
        prop_assert!(a.best_path.raw_bandwidth <= o.raw_bandwidth);
        prop_assert!(a.generations_used <= cfg.generations);
        prop_assert_eq!(a.history.len(), a.generations_used);
        let total: f64 = a.final_population.iter().map(|c| c.fitness).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }
}

#[test]
fn ga_reaches_oracle_on_dense_twelve_node_graphs() {
    let mut hits = 0;
    for seed in 0..100 {
        let g = random_graph(12, 0.5, seed);
        let (s, d) = (NodeId(0), NodeId(11));
        let cfg = GaConfig { seed, ..GaConfig::default() };
        let r = evolve(&g, s, d, &cfg).unwrap();
        if r.best_path.raw_bandwidth == widest_path_oracle(&g, s, d).unwrap().raw_bandwidth {
            hits += 1;
        }
    }
    assert!(hits >= 95, "{hits}/100");
}

#[test]
fn unreachable_destination_is_reported() {
    let g = RouteGraph::from_edges(vec![true; 3], [(NodeId(0), NodeId(1), 5.0), (NodeId(1), NodeId(0), 5.0)]);
    let err = evolve(&g, NodeId(0), NodeId(2), &GaConfig::default()).unwrap_err();
    assert_eq!(err, GaError::NoPath { origin: NodeId(0), dest: NodeId(2) });
    assert!(widest_path_oracle(&g, NodeId(0), NodeId(2)).is_err());
}

#[test]
fn chromosome_rejects_non_edges_and_loops() {
    let g = RouteGraph::from_edges(
        vec![true; 3],
        [(NodeId(0), NodeId(1), 5.0), (NodeId(1), NodeId(0), 5.0), (NodeId(1), NodeId(2), 7.0)],
    );
    assert!(Chromosome::from_path(&g, vec![NodeId(0), NodeId(2)]).is_none());
    assert!(Chromosome::from_path(&g, vec![NodeId(0), NodeId(1), NodeId(0), NodeId(1), NodeId(2)]).is_none());
    assert_eq!(Chromosome::from_path(&g, vec![NodeId(0), NodeId(1), NodeId(2)]).unwrap().raw_bandwidth, 5.0);
}
