//! Path-preserving crossover and mutation.

use std::collections::HashMap;

use rand::Rng as _;

use super::Chromosome;
use crate::graph::{NodeId, RouteGraph};
use crate::rng::Rng;

/// Regrowth attempts before a mutation gives up and returns the parent.
pub const MUTATION_ATTEMPTS: usize = 10;

/// Splices `parent1`'s prefix onto `parent2`'s suffix at a shared interior
/// node chosen uniformly, then cuts out any loop. Parents without a shared
/// interior node yield a copy of the fitter one.
pub fn crossover_paths(
    graph: &RouteGraph,
    parent1: &Chromosome,
    parent2: &Chromosome,
    rng: &mut Rng,
) -> Chromosome {
    let fitter = || {
        if parent2.raw_bandwidth > parent1.raw_bandwidth {
            parent2.clone()
        } else {
            parent1.clone()
        }
    };
    if parent1.source() != parent2.source() || parent1.dest() != parent2.dest() {
        return fitter();
    }
    let p2_interior: HashMap<NodeId, usize> = parent2.path[1..parent2.path.len() - 1]
        .iter()
        .enumerate()
        .map(|(i, &n)| (n, i + 1))
        .collect();
    let shared: Vec<(usize, usize)> = parent1.path[1..parent1.path.len() - 1]
        .iter()
        .enumerate()
        .filter_map(|(i, n)| p2_interior.get(n).map(|&j| (i + 1, j)))
        .collect();
    if shared.is_empty() {
        return fitter();
    }
    let (i, j) = shared[rng.gen_range(0..shared.len())];
    let spliced = parent1.path[..=i].iter().chain(&parent2.path[j + 1..]).copied();
    let child = remove_loops(spliced);
    Chromosome::from_path(graph, child).unwrap_or_else(fitter)
}

/// Drops the segment between repeated visits of the same node.
pub(crate) fn remove_loops(path: impl IntoIterator<Item = NodeId>) -> Vec<NodeId> {
    let mut out: Vec<NodeId> = Vec::new();
    let mut pos: HashMap<NodeId, usize> = HashMap::new();
    for n in path {
        if let Some(&p) = pos.get(&n) {
            for dropped in out.drain(p + 1..) {
                pos.remove(&dropped);
            }
        } else {
            pos.insert(n, out.len());
            out.push(n);
        }
    }
    out
}

/// Keeps the path up to a random interior node and regrows the rest by a
/// random walk that avoids the kept prefix. Returns the parent unchanged when
/// there is no interior node or every attempt dead-ends.
pub fn mutate_path(graph: &RouteGraph, parent: &Chromosome, rng: &mut Rng) -> Chromosome {
    let len = parent.path.len();
    if len <= 2 {
        return parent.clone();
    }
    let cut = rng.gen_range(1..len - 1);
    let dest = parent.dest();
    let prefix = &parent.path[..=cut];
    let mut candidates = Vec::new();
    for _ in 0..MUTATION_ATTEMPTS {
        let mut used = vec![false; graph.id_space()];
        for n in prefix {
            used[n.index()] = true;
        }
        let mut path = prefix.to_vec();
        let mut at = parent.path[cut];
        loop {
            candidates.clear();
            candidates.extend(
                graph
                    .neighbors(at)
                    .iter()
                    .map(|&(v, _)| v)
                    .filter(|v| !used[v.index()]),
            );
            if candidates.is_empty() {
                break;
            }
            at = candidates[rng.gen_range(0..candidates.len())];
            used[at.index()] = true;
            path.push(at);
            if at == dest {
                if let Some(child) = Chromosome::from_path(graph, path) {
                    return child;
                }
                break;
            }
        }
    }
    parent.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{stream, Stream};

    fn n(i: u32) -> NodeId {
        NodeId(i)
    }

    fn path(ids: &[u32]) -> Vec<NodeId> {
        ids.iter().map(|&i| n(i)).collect()
    }

    fn complete(k: usize) -> RouteGraph {
        let mut edges = Vec::new();
        for a in 0..k {
            for b in 0..k {
                if a != b {
                    edges.push((NodeId::from(a), NodeId::from(b), 10.0 + (a + b) as f64));
                }
            }
        }
        RouteGraph::from_edges(vec![true; k], edges)
    }

    fn six_node_fixture() -> RouteGraph {
        let mut edges = Vec::new();
        for (a, b) in [(0, 1), (1, 2), (2, 5), (0, 3), (3, 2), (2, 4), (4, 5)] {
            edges.push((n(a), n(b), 10.0));
        }
        RouteGraph::from_edges(vec![true; 6], edges)
    }

    #[test]
    fn disjoint_interiors_copy_fitter_parent() {
        let g = complete(4);
        let a = Chromosome::from_path(&g, path(&[0, 1, 3])).unwrap();
        let b = Chromosome::from_path(&g, path(&[0, 2, 3])).unwrap();
        let mut rng = stream(1, Stream::Evolution);
        let child = crossover_paths(&g, &a, &b, &mut rng);
        let fitter = if b.raw_bandwidth > a.raw_bandwidth { &b } else { &a };
        assert_eq!(&child, fitter);
    }

    #[test]
    fn splice_at_shared_node() {
        let g = six_node_fixture();
        let a = Chromosome::from_path(&g, path(&[0, 1, 2, 5])).unwrap();
        let b = Chromosome::from_path(&g, path(&[0, 3, 2, 4, 5])).unwrap();
        let mut rng = stream(2, Stream::Evolution);
        let child = crossover_paths(&g, &a, &b, &mut rng);
        assert_eq!(child.path, path(&[0, 1, 2, 4, 5]));
        assert!(child.is_valid_in(&g));
    }

    #[test]
    fn identical_parents_give_identical_child() {
        let g = complete(5);
        let a = Chromosome::from_path(&g, path(&[0, 2, 1, 4])).unwrap();
        let mut rng = stream(3, Stream::Evolution);
        for _ in 0..10 {
            assert_eq!(crossover_paths(&g, &a, &a, &mut rng).path, a.path);
        }
    }

    #[test]
    fn loops_are_cut_out() {
        assert_eq!(remove_loops(path(&[0, 1, 2, 1, 3])), path(&[0, 1, 3]));
        assert_eq!(remove_loops(path(&[0, 1, 2, 3, 4, 2, 5])), path(&[0, 1, 2, 5]));
        let g = complete(4);
        let a = Chromosome::from_path(&g, path(&[0, 1, 2, 3])).unwrap();
        let b = Chromosome::from_path(&g, path(&[0, 2, 1, 3])).unwrap();
        let mut rng = stream(4, Stream::Evolution);
        for _ in 0..20 {
            let c = crossover_paths(&g, &a, &b, &mut rng);
            assert!(c.is_valid_in(&g));
            assert_eq!((c.source(), c.dest()), (n(0), n(3)));
        }
    }

    #[test]
    fn direct_path_is_not_mutated() {
        let g = complete(4);
        let a = Chromosome::from_path(&g, path(&[0, 3])).unwrap();
        let mut rng = stream(5, Stream::Evolution);
        assert_eq!(mutate_path(&g, &a, &mut rng), a);
    }

    #[test]
    fn mutation_outcomes_match_reachable_suffixes() {
        let g = complete(4);
        let a = Chromosome::from_path(&g, path(&[0, 1, 3])).unwrap();
        let mut rng = stream(6, Stream::Evolution);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..200 {
            seen.insert(mutate_path(&g, &a, &mut rng).path);
        }
        let expected: std::collections::BTreeSet<_> = [path(&[0, 1, 3]), path(&[0, 1, 2, 3])].into();
        assert_eq!(seen, expected);
    }

    #[test]
    fn forced_regrowth_reproduces_parent() {
        // 0 -> 1 -> 2 -> 3 is the only route; the detour through 4 dead-ends at 0.
        let g = RouteGraph::from_edges(
            vec![true; 5],
            [(n(0), n(1), 1.0), (n(1), n(2), 1.0), (n(2), n(3), 1.0), (n(1), n(4), 1.0), (n(4), n(0), 1.0)],
        );
        let a = Chromosome::from_path(&g, path(&[0, 1, 2, 3])).unwrap();
        let mut rng = stream(7, Stream::Evolution);
        for _ in 0..50 {
            let c = mutate_path(&g, &a, &mut rng);
            assert_eq!(c.path, a.path);
        }
    }
}
