//! Node identifiers and the directed, bandwidth-weighted graph view that the
//! routing code searches.

use std::collections::VecDeque;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for NodeId {
    fn from(i: usize) -> Self {
        NodeId(i as u32)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Directed graph over a fixed id space where only some nodes are active.
///
/// Adjacency lists are sorted by neighbour id so every traversal order is
/// deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct RouteGraph {
    active: Vec<bool>,
    adjacency: Vec<Vec<(NodeId, f64)>>,
}

impl RouteGraph {
    /// Builds a graph from `(from, to, bandwidth)` triples. Edges touching an
    /// inactive node are dropped.
    pub fn from_edges<I>(active: Vec<bool>, edges: I) -> Self
    where
        I: IntoIterator<Item = (NodeId, NodeId, f64)>,
    {
        let mut adjacency = vec![Vec::new(); active.len()];
        for (from, to, bandwidth) in edges {
            if active[from.index()] && active[to.index()] {
                adjacency[from.index()].push((to, bandwidth));
            }
        }
        for list in &mut adjacency {
            list.sort_by_key(|&(n, _)| n);
            list.dedup_by_key(|&mut (n, _)| n);
        }
        RouteGraph { active, adjacency }
    }

    pub fn id_space(&self) -> usize {
        self.active.len()
    }

    pub fn contains(&self, node: NodeId) -> bool {
        self.active.get(node.index()).copied().unwrap_or(false)
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.active
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(i, _)| NodeId::from(i))
    }

    pub fn node_count(&self) -> usize {
        self.active.iter().filter(|&&a| a).count()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    pub fn neighbors(&self, node: NodeId) -> &[(NodeId, f64)] {
        self.adjacency
            .get(node.index())
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn bandwidth(&self, from: NodeId, to: NodeId) -> Option<f64> {
        let list = self.neighbors(from);
        list.binary_search_by_key(&to, |&(n, _)| n)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, f64)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(from, list)| {
            list.iter()
                .map(move |&(to, bw)| (NodeId::from(from), to, bw))
        })
    }

    /// Minimum link bandwidth along `path`, or `None` when the path is not a
    /// simple walk over existing edges with at least two nodes.
    pub fn path_bottleneck(&self, path: &[NodeId]) -> Option<f64> {
        if path.len() < 2 || !is_simple(path) {
            return None;
        }
        if !path.iter().all(|&n| self.contains(n)) {
            return None;
        }
        path.windows(2)
            .map(|w| self.bandwidth(w[0], w[1]))
            .try_fold(f64::INFINITY, |acc, bw| bw.map(|b| acc.min(b)))
    }

    /// Hop distance from every node to `target` following edges forward,
    /// optionally restricted to edges with bandwidth at least `min_bandwidth`.
    pub fn hops_to(&self, target: NodeId, min_bandwidth: f64) -> Vec<Option<usize>> {
        let n = self.active.len();
        let mut reverse: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        for (from, to, bw) in self.edges() {
            if bw >= min_bandwidth {
                reverse[to.index()].push(from);
            }
        }
        let mut dist = vec![None; n];
        if !self.contains(target) {
            return dist;
        }
        dist[target.index()] = Some(0);
        let mut queue = VecDeque::from([target]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v.index()].unwrap_or(0);
            for &u in &reverse[v.index()] {
                if dist[u.index()].is_none() {
                    dist[u.index()] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    pub fn reachable(&self, from: NodeId, to: NodeId) -> bool {
        self.contains(from) && self.hops_to(to, f64::NEG_INFINITY)[from.index()].is_some()
    }
}

pub(crate) fn is_simple(path: &[NodeId]) -> bool {
    let mut seen: Vec<NodeId> = path.to_vec();
    seen.sort_unstable();
    seen.windows(2).all(|w| w[0] != w[1])
}
