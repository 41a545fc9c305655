//! Region-partitioned network topologies: generation, validation and the
//! line-oriented text format.
//!
//! A topology is a directed graph whose nodes carry a [`NodeAttributes`]
//! quality vector, whose links carry a bandwidth, and which comes with an
//! external-traffic matrix (`gamma`). Node ids are dense, `0..node_count`.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng as _;
use thiserror::Error;

use crate::graph::{NodeId, RouteGraph};
use crate::rng::{self, Stream};

#[derive(Debug, Error, PartialEq)]
pub enum TopologyError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("duplicate node id {0}")]
    DuplicateNode(u32),
    #[error("edge references unknown node {0}")]
    UnknownNode(u32),
    #[error("node ids must be contiguous from 0; node {0} is missing")]
    MissingNode(u32),
    #[error("region {0} has no nodes")]
    EmptyRegion(usize),
    #[error("self-loop on node {0}")]
    SelfLoop(u32),
    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(u32, u32),
    #[error("invalid attribute on node {node}: {message}")]
    InvalidAttribute { node: u32, message: String },
    #[error("invalid link {from} -> {to}: bandwidth must be positive and finite")]
    InvalidLink { from: u32, to: u32 },
    #[error("invalid external traffic entry ({j}, {k}): {message}")]
    InvalidTraffic { j: u32, k: u32, message: String },
    #[error("invalid generator parameter: {0}")]
    InvalidParameter(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

/// Per-node quality vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeAttributes {
    pub bandwidth_mbps: f64,
    /// 0 means the node is dead.
    pub network_lifetime: f64,
    pub resource_allocated: f64,
    /// Arrival rate, messages/second.
    pub arrival_rate_lambda: f64,
    /// Service rate, messages/second.
    pub service_rate_mu: f64,
    pub capacity: f64,
    /// Same units as `bandwidth_mbps`.
    pub current_traffic: f64,
}

impl NodeAttributes {
    pub fn validate(&self) -> Result<(), String> {
        let all = [
            self.bandwidth_mbps,
            self.network_lifetime,
            self.resource_allocated,
            self.arrival_rate_lambda,
            self.service_rate_mu,
            self.capacity,
            self.current_traffic,
        ];
        if all.iter().any(|v| !v.is_finite()) {
            return Err("non-finite value".into());
        }
        if self.bandwidth_mbps <= 0.0 {
            return Err("bandwidth must be positive".into());
        }
        if !(0.0..=1.0).contains(&self.network_lifetime) {
            return Err("network lifetime outside [0, 1]".into());
        }
        if !(0.0..=1.0).contains(&self.resource_allocated) {
            return Err("resource allocation outside [0, 1]".into());
        }
        if self.arrival_rate_lambda < 0.0 {
            return Err("arrival rate must be nonnegative".into());
        }
        if self.service_rate_mu <= 0.0 {
            return Err("service rate must be positive".into());
        }
        if self.capacity <= 0.0 {
            return Err("capacity must be positive".into());
        }
        if self.current_traffic < 0.0 {
            return Err("current traffic must be nonnegative".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Link {
    pub from: NodeId,
    pub to: NodeId,
    pub bandwidth_mbps: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    nodes: Vec<NodeAttributes>,
    regions: Vec<usize>,
    region_count: usize,
    links: Vec<Link>,
    /// Row-major `node_count x node_count`.
    gamma: Vec<f64>,
}

impl Topology {
    /// Validates and assembles a topology. Links are stored sorted by
    /// `(from, to)`; `gamma` must be `node_count * node_count` long.
    pub fn new(
        nodes: Vec<NodeAttributes>,
        regions: Vec<usize>,
        mut links: Vec<Link>,
        gamma: Vec<f64>,
    ) -> Result<Self, TopologyError> {
        let n = nodes.len();
        if regions.len() != n {
            return Err(TopologyError::InvalidParameter(format!(
                "{} region labels for {} nodes",
                regions.len(),
                n
            )));
        }
        for (i, attrs) in nodes.iter().enumerate() {
            attrs
                .validate()
                .map_err(|message| TopologyError::InvalidAttribute { node: i as u32, message })?;
        }
        let region_count = regions.iter().max().map_or(0, |&m| m + 1);
        let mut sizes = vec![0usize; region_count];
        for &r in &regions {
            sizes[r] += 1;
        }
        if let Some(empty) = sizes.iter().position(|&s| s == 0) {
            return Err(TopologyError::EmptyRegion(empty));
        }
        for link in &links {
            for end in [link.from, link.to] {
                if end.index() >= n {
                    return Err(TopologyError::UnknownNode(end.0));
                }
            }
            if link.from == link.to {
                return Err(TopologyError::SelfLoop(link.from.0));
            }
            if !(link.bandwidth_mbps.is_finite() && link.bandwidth_mbps > 0.0) {
                return Err(TopologyError::InvalidLink { from: link.from.0, to: link.to.0 });
            }
        }
        links.sort_by_key(|l| (l.from, l.to));
        if let Some(w) = links.windows(2).find(|w| (w[0].from, w[0].to) == (w[1].from, w[1].to)) {
            return Err(TopologyError::DuplicateEdge(w[0].from.0, w[0].to.0));
        }
        if gamma.len() != n * n {
            return Err(TopologyError::InvalidParameter("gamma matrix has wrong size".into()));
        }
        for j in 0..n {
            for k in 0..n {
                let g = gamma[j * n + k];
                let bad = if !g.is_finite() || g < 0.0 {
                    Some("rate must be finite and nonnegative")
                } else if j == k && g != 0.0 {
                    Some("diagonal entries must be zero")
                } else {
                    None
                };
                if let Some(message) = bad {
                    return Err(TopologyError::InvalidTraffic {
                        j: j as u32,
                        k: k as u32,
                        message: message.into(),
                    });
                }
            }
        }
        Ok(Topology { nodes, regions, region_count, links, gamma })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn region_count(&self) -> usize {
        self.region_count
    }

    pub fn nodes(&self) -> &[NodeAttributes] {
        &self.nodes
    }

    pub fn attributes(&self, node: NodeId) -> Option<&NodeAttributes> {
        self.nodes.get(node.index())
    }

    pub fn region_of(&self, node: NodeId) -> Option<usize> {
        self.regions.get(node.index()).copied()
    }

    /// Members of `region` in ascending id order.
    pub fn region_members(&self, region: usize) -> Vec<NodeId> {
        self.regions
            .iter()
            .enumerate()
            .filter(|(_, &r)| r == region)
            .map(|(i, _)| NodeId::from(i))
            .collect()
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn gamma(&self, j: NodeId, k: NodeId) -> f64 {
        let n = self.nodes.len();
        self.gamma[j.index() * n + k.index()]
    }

    /// Total external traffic rate, the sum of every `gamma(j, k)`.
    pub fn gamma_total(&self) -> f64 {
        self.gamma.iter().sum()
    }

    /// In-degree of `node` in the directed link set.
    pub fn node_density(&self, node: NodeId) -> Result<usize, TopologyError> {
        if node.index() >= self.nodes.len() {
            return Err(TopologyError::UnknownNode(node.0));
        }
        Ok(self.links.iter().filter(|l| l.to == node).count())
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for l in &self.links {
            deg[l.to.index()] += 1;
        }
        deg
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for l in &self.links {
            deg[l.from.index()] += 1;
        }
        deg
    }

    /// Whether the underlying undirected graph is connected.
    pub fn is_connected(&self) -> bool {
        let n = self.nodes.len();
        if n == 0 {
            return true;
        }
        let mut uf = UnionFind::new(n);
        for l in &self.links {
            uf.union(l.from.index(), l.to.index());
        }
        let root = uf.find(0);
        (1..n).all(|i| uf.find(i) == root)
    }

    pub fn route_graph(&self) -> RouteGraph {
        self.induced_route_graph(&vec![true; self.nodes.len()])
    }

    pub fn induced_route_graph(&self, keep: &[bool]) -> RouteGraph {
        RouteGraph::from_edges(
            keep.to_vec(),
            self.links.iter().map(|l| (l.from, l.to, l.bandwidth_mbps)),
        )
    }

    /// Serializes to the text format. Reals use the shortest representation
    /// that parses back to the same `f64`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let n = self.nodes.len();
        let _ = writeln!(
            out,
            "# gradroute topology: {} nodes, {} regions, {} links",
            n,
            self.region_count,
            self.links.len()
        );
        let _ = writeln!(
            out,
            "# node <id> <region> <bandwidth> <lifetime> <resource> <lambda> <mu> <capacity> <traffic>"
        );
        for (i, a) in self.nodes.iter().enumerate() {
            let _ = writeln!(
                out,
                "node {} {} {:?} {:?} {:?} {:?} {:?} {:?} {:?}",
                i,
                self.regions[i],
                a.bandwidth_mbps,
                a.network_lifetime,
                a.resource_allocated,
                a.arrival_rate_lambda,
                a.service_rate_mu,
                a.capacity,
                a.current_traffic
            );
        }
        for l in &self.links {
            let _ = writeln!(out, "edge {} {} {:?}", l.from, l.to, l.bandwidth_mbps);
        }
        for j in 0..n {
            for k in 0..n {
                let g = self.gamma[j * n + k];
                if g != 0.0 {
                    let _ = writeln!(out, "gamma {} {} {:?}", j, k, g);
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, TopologyError> {
        parse_topology(text)
    }

    pub fn fingerprint(&self) -> u64 {
        crate::knowledge_base::fingerprint_bytes(self.to_text().as_bytes())
    }
}

pub fn save_topology(topology: &Topology, path: &Path) -> Result<(), TopologyError> {
    fs::write(path, topology.to_text()).map_err(|e| TopologyError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn load_topology(path: &Path) -> Result<Topology, TopologyError> {
    let text = fs::read_to_string(path).map_err(|e| TopologyError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_topology(&text)
}

fn parse_topology(text: &str) -> Result<Topology, TopologyError> {
    let mut node_rows: Vec<(u32, usize, NodeAttributes)> = Vec::new();
    let mut seen_nodes = BTreeSet::new();
    let mut edge_rows: Vec<(usize, Link)> = Vec::new();
    let mut gamma_rows: Vec<(usize, u32, u32, f64)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let err = |message: String| TopologyError::Parse { line, message };
        let expect = |count: usize| {
            if fields.len() == count {
                Ok(())
            } else {
                Err(err(format!(
                    "'{}' record needs {} fields, found {}",
                    fields[0],
                    count - 1,
                    fields.len() - 1
                )))
            }
        };
        match fields[0] {
            "node" => {
                expect(10)?;
                let id: u32 = parse_field(fields[1], "node id", line)?;
                let region: usize = parse_field(fields[2], "region", line)?;
                let real = |i: usize, name: &str| parse_field::<f64>(fields[i], name, line);
                let attrs = NodeAttributes {
                    bandwidth_mbps: real(3, "bandwidth")?,
                    network_lifetime: real(4, "lifetime")?,
                    resource_allocated: real(5, "resource")?,
                    arrival_rate_lambda: real(6, "lambda")?,
                    service_rate_mu: real(7, "mu")?,
                    capacity: real(8, "capacity")?,
                    current_traffic: real(9, "traffic")?,
                };
                if !seen_nodes.insert(id) {
                    return Err(TopologyError::DuplicateNode(id));
                }
                node_rows.push((id, region, attrs));
            }
            "edge" => {
                expect(4)?;
                let from: u32 = parse_field(fields[1], "edge source", line)?;
                let to: u32 = parse_field(fields[2], "edge target", line)?;
                let bw: f64 = parse_field(fields[3], "link bandwidth", line)?;
                edge_rows.push((line, Link { from: NodeId(from), to: NodeId(to), bandwidth_mbps: bw }));
            }
            "gamma" => {
                expect(4)?;
                let j: u32 = parse_field(fields[1], "gamma origin", line)?;
                let k: u32 = parse_field(fields[2], "gamma destination", line)?;
                let rate: f64 = parse_field(fields[3], "gamma rate", line)?;
                gamma_rows.push((line, j, k, rate));
            }
            other => return Err(err(format!("unknown record type '{}'", other))),
        }
    }

    let n = node_rows.len();
    if let Some(missing) = (0..n as u32).find(|i| !seen_nodes.contains(i)) {
        return Err(TopologyError::MissingNode(missing));
    }
    node_rows.sort_by_key(|r| r.0);
    let regions: Vec<usize> = node_rows.iter().map(|r| r.1).collect();
    let nodes: Vec<NodeAttributes> = node_rows.into_iter().map(|r| r.2).collect();

    let mut links = Vec::with_capacity(edge_rows.len());
    for (_, link) in edge_rows {
        for end in [link.from, link.to] {
            if end.index() >= n {
                return Err(TopologyError::UnknownNode(end.0));
            }
        }
        links.push(link);
    }

    let mut gamma = vec![0.0; n * n];
    let mut seen_gamma = BTreeSet::new();
    for (line, j, k, rate) in gamma_rows {
        for end in [j, k] {
            if end as usize >= n {
                return Err(TopologyError::UnknownNode(end));
            }
        }
        if !seen_gamma.insert((j, k)) {
            return Err(TopologyError::Parse { line, message: format!("duplicate gamma entry ({}, {})", j, k) });
        }
        gamma[j as usize * n + k as usize] = rate;
    }

    Topology::new(nodes, regions, links, gamma)
}

fn parse_field<T: std::str::FromStr>(s: &str, name: &str, line: usize) -> Result<T, TopologyError> {
    s.parse().map_err(|_| TopologyError::Parse {
        line,
        message: format!("invalid {} '{}'", name, s),
    })
}

/// Uniform sampling ranges for generated node attributes.
#[derive(Debug, Clone, PartialEq)]
pub struct AttributeRanges {
    pub bandwidth_mbps: (f64, f64),
    pub network_lifetime: (f64, f64),
    pub resource_allocated: (f64, f64),
    pub service_rate_mu: (f64, f64),
    pub capacity: (f64, f64),
    /// Arrival rate is drawn from `[0, load_ceiling * mu * capacity]`.
    pub load_ceiling: f64,
}

impl Default for AttributeRanges {
    fn default() -> Self {
        AttributeRanges {
            bandwidth_mbps: (10.0, 100.0),
            network_lifetime: (0.0, 1.0),
            resource_allocated: (0.0, 1.0),
            service_rate_mu: (50.0, 150.0),
            capacity: (1.0, 10.0),
            load_ceiling: 0.9,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub node_count: usize,
    pub region_count: usize,
    /// Probability that an unordered pair within a region is linked.
    pub edge_density: f64,
    /// Cross-region pairs between ring-adjacent regions are linked with
    /// probability `edge_density * inter_region_factor`.
    pub inter_region_factor: f64,
    pub attributes: AttributeRanges,
    pub gamma_max: f64,
    /// Optional cap on undirected degree for sampled links. Bridges that keep
    /// the graph connected may exceed it.
    pub max_degree: Option<usize>,
}

impl GeneratorConfig {
    pub fn new(node_count: usize, region_count: usize, edge_density: f64) -> Self {
        GeneratorConfig {
            node_count,
            region_count,
            edge_density,
            inter_region_factor: 0.5,
            attributes: AttributeRanges::default(),
            gamma_max: 5.0,
            max_degree: None,
        }
    }

    fn validate(&self) -> Result<(), TopologyError> {
        let bad = |m: &str| Err(TopologyError::InvalidParameter(m.to_string()));
        if self.node_count < 2 {
            return bad("node_count must be at least 2");
        }
        if self.region_count < 1 {
            return bad("region_count must be at least 1");
        }
        if self.region_count > self.node_count {
            return bad("region_count must not exceed node_count");
        }
        if !(self.edge_density > 0.0 && self.edge_density <= 1.0) {
            return bad("edge_density must lie in (0, 1]");
        }
        if self.max_degree == Some(0) {
            return bad("max_degree must be positive");
        }
        if !(0.0..=1.0).contains(&self.inter_region_factor) {
            return bad("inter_region_factor must lie in [0, 1]");
        }
        if !(self.gamma_max.is_finite() && self.gamma_max >= 0.0) {
            return bad("gamma_max must be finite and nonnegative");
        }
        let a = &self.attributes;
        let ranges = [a.bandwidth_mbps, a.network_lifetime, a.resource_allocated, a.service_rate_mu, a.capacity];
        if ranges.iter().any(|&(lo, hi)| !(lo.is_finite() && hi.is_finite() && lo <= hi)) {
            return bad("attribute ranges must be finite with low <= high");
        }
        if a.bandwidth_mbps.0 <= 0.0 || a.service_rate_mu.0 <= 0.0 || a.capacity.0 <= 0.0 {
            return bad("bandwidth, service rate and capacity ranges must be positive");
        }
        if a.network_lifetime.0 < 0.0 || a.network_lifetime.1 > 1.0 || a.resource_allocated.0 < 0.0 || a.resource_allocated.1 > 1.0 {
            return bad("score ranges must lie within [0, 1]");
        }
        if !(0.0..1.0).contains(&a.load_ceiling) {
            return bad("load_ceiling must lie in [0, 1)");
        }
        Ok(())
    }
}

/// Generates a connected, region-partitioned topology with default attribute
/// distributions.
pub fn generate_topology(
    node_count: usize,
    region_count: usize,
    edge_density: f64,
    seed: u64,
) -> Result<Topology, TopologyError> {
    generate_with(&GeneratorConfig::new(node_count, region_count, edge_density), seed)
}

pub fn generate_with(config: &GeneratorConfig, seed: u64) -> Result<Topology, TopologyError> {
    config.validate()?;
    let n = config.node_count;
    let r = config.region_count;

    // Contiguous near-equal regions; the first n % r regions get one extra.
    let base = n / r;
    let extra = n % r;
    let mut regions = Vec::with_capacity(n);
    let mut members: Vec<Vec<usize>> = Vec::with_capacity(r);
    for region in 0..r {
        let size = base + usize::from(region < extra);
        let start = regions.len();
        members.push((start..start + size).collect());
        regions.extend(std::iter::repeat_n(region, size));
    }

    let mut rng = rng::stream(seed, Stream::NodeAttributes);
    let ranges = &config.attributes;
    let nodes: Vec<NodeAttributes> = (0..n)
        .map(|_| {
            let bandwidth_mbps = uniform(&mut rng, ranges.bandwidth_mbps);
            let network_lifetime = uniform(&mut rng, ranges.network_lifetime);
            let resource_allocated = uniform(&mut rng, ranges.resource_allocated);
            let service_rate_mu = uniform(&mut rng, ranges.service_rate_mu);
            let capacity = uniform(&mut rng, ranges.capacity);
            let arrival_rate_lambda =
                uniform(&mut rng, (0.0, ranges.load_ceiling * service_rate_mu * capacity));
            let current_traffic = uniform(&mut rng, (0.0, bandwidth_mbps));
            NodeAttributes {
                bandwidth_mbps,
                network_lifetime,
                resource_allocated,
                arrival_rate_lambda,
                service_rate_mu,
                capacity,
                current_traffic,
            }
        })
        .collect();

    let mut rng = rng::stream(seed, Stream::Links);
    let mut pairs = PairSet::new(n, config.max_degree);
    let ring: Vec<(usize, usize)> = match r {
        1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => (0..r).map(|i| (i, (i + 1) % r)).collect(),
    };

    // Within-region pairs at `edge_density`, ring-adjacent cross pairs at
    // `edge_density * inter_region_factor`, drawn in one pass.
    let cross_p = config.edge_density * config.inter_region_factor;
    let mut candidates: Vec<(usize, usize, f64)> = Vec::new();
    for group in &members {
        for (i, &u) in group.iter().enumerate() {
            for &v in &group[i + 1..] {
                candidates.push((u, v, config.edge_density));
            }
        }
    }
    if cross_p > 0.0 {
        for &(ra, rb) in &ring {
            for &u in &members[ra] {
                for &v in &members[rb] {
                    candidates.push((u, v, cross_p));
                }
            }
        }
    }
    pairs.sample(&mut rng, &mut candidates);

    // Bridge each region's components in order of their smallest member,
    // then make sure every ring-adjacent region pair is linked.
    for group in &members {
        let mut uf = UnionFind::new(n);
        for &(a, b) in pairs.set.iter() {
            uf.union(a, b);
        }
        let mut components: Vec<Vec<usize>> = Vec::new();
        for &u in group {
            let root = uf.find(u);
            match components.iter_mut().find(|c| uf.find(c[0]) == root) {
                Some(c) => c.push(u),
                None => components.push(vec![u]),
            }
        }
        for w in components.windows(2) {
            let a = w[0][rng.gen_range(0..w[0].len())];
            let b = w[1][rng.gen_range(0..w[1].len())];
            pairs.force(a, b);
        }
    }
    for &(ra, rb) in &ring {
        let (a, b) = (&members[ra], &members[rb]);
        if !pairs.set.iter().any(|&(x, y)| {
            (a.contains(&x) && b.contains(&y)) || (a.contains(&y) && b.contains(&x))
        }) {
            let bridge_a = a[rng.gen_range(0..a.len())];
            let bridge_b = b[rng.gen_range(0..b.len())];
            pairs.force(bridge_a, bridge_b);
        }
    }
    let pairs = pairs.set;

    let mut links = Vec::with_capacity(pairs.len() * 2);
    for &(a, b) in &pairs {
        let bw = nodes[a].bandwidth_mbps.min(nodes[b].bandwidth_mbps);
        links.push(Link { from: NodeId::from(a), to: NodeId::from(b), bandwidth_mbps: bw });
        links.push(Link { from: NodeId::from(b), to: NodeId::from(a), bandwidth_mbps: bw });
    }

    let mut rng = rng::stream(seed, Stream::ExternalTraffic);
    let mut gamma = vec![0.0; n * n];
    for j in 0..n {
        for k in 0..n {
            if j != k {
                gamma[j * n + k] = uniform(&mut rng, (0.0, config.gamma_max));
            }
        }
    }

    Topology::new(nodes, regions, links, gamma)
}

fn uniform(rng: &mut rng::Rng, (lo, hi): (f64, f64)) -> f64 {
    if hi > lo {
        rng.gen_range(lo..=hi)
    } else {
        lo
    }
}

/// Undirected pairs with per-node degree bookkeeping for the optional cap.
struct PairSet {
    set: BTreeSet<(usize, usize)>,
    degree: Vec<usize>,
    cap: Option<usize>,
}

impl PairSet {
    fn new(n: usize, cap: Option<usize>) -> Self {
        PairSet { set: BTreeSet::new(), degree: vec![0; n], cap }
    }

    fn force(&mut self, a: usize, b: usize) {
        if self.set.insert((a.min(b), a.max(b))) {
            self.degree[a] += 1;
            self.degree[b] += 1;
        }
    }

    /// Keeps each candidate with its own probability. With a cap the candidates
    /// are visited in random order and pairs touching a full node are skipped.
    fn sample(&mut self, rng: &mut rng::Rng, candidates: &mut [(usize, usize, f64)]) {
        if self.cap.is_some() {
            candidates.shuffle(rng);
        }
        for &(u, v, p) in candidates.iter() {
            let draw = rng.gen_bool(p);
            let room = self.cap.is_none_or(|c| self.degree[u] < c && self.degree[v] < c);
            if draw && room {
                self.force(u, v);
            }
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
