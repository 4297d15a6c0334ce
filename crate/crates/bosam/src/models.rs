//! Seeded generators for the three comparison families: uniform random
//! (ER), preferential-attachment scale-free (BA), and positive-feedback
//! preference (PFP).
//!
//! Every generator hits its node and link targets exactly and is a pure
//! function of its spec, including the 64-bit seed (ChaCha8 keeps the
//! stream identical across platforms and releases). Node labels are the
//! decimal internal ids, assigned in creation order.

use crate::graph::{Graph, NodeId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use std::error::Error;
use std::fmt;

/// Positive-feedback preference knobs: branch probabilities `p`, `q` and
/// the feedback exponent `delta` in the node weight `k^(1 + delta·log₁₀ k)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PfpParams {
    pub p: f64,
    pub q: f64,
    pub delta: f64,
}

impl Default for PfpParams {
    fn default() -> Self {
        PfpParams { p: 0.3, q: 0.1, delta: 0.048 }
    }
}

/// A fully specified generation request.
#[derive(Clone, Debug, PartialEq)]
pub enum ModelSpec {
    Er { nodes: usize, links: usize, seed: u64 },
    Ba { nodes: usize, links: usize, links_per_node: u32, seed: u64 },
    Pfp { nodes: usize, links: usize, params: PfpParams, seed: u64 },
}

/// A generation request that cannot be satisfied.
#[derive(Debug, PartialEq)]
pub enum ModelError {
    NodeCountRange { nodes: usize },
    TooManyLinks { nodes: usize, links: usize },
    /// BA attachment count must be in `[1, min(7, nodes − 1)]`.
    BaLinksPerNode { links_per_node: u32, max: u32 },
    /// BA link totals are fully determined by (nodes, links_per_node).
    BaLinkCount { requested: usize, expected: usize },
    /// Fewer links than a connected graph on `nodes` requires.
    TooFewLinks { nodes: usize, links: usize },
    PfpParamRange { p: f64, q: f64 },
    /// A required weighted draw had no remaining candidate.
    Exhausted { context: &'static str },
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::NodeCountRange { nodes } => {
                write!(f, "node count {nodes} exceeds the 32-bit id space")
            }
            ModelError::TooManyLinks { nodes, links } => {
                write!(f, "{links} links exceed the {nodes}-node simple-graph maximum")
            }
            ModelError::BaLinksPerNode { links_per_node, max } => {
                write!(f, "links per node must be in [1, {max}] (got {links_per_node})")
            }
            ModelError::BaLinkCount { requested, expected } => {
                write!(f, "link target {requested} inconsistent: this node count and links-per-node yield exactly {expected}")
            }
            ModelError::TooFewLinks { nodes, links } => {
                write!(f, "{links} links cannot connect {nodes} nodes (need at least {})", nodes.saturating_sub(1))
            }
            ModelError::PfpParamRange { p, q } => {
                write!(f, "branch probabilities must satisfy p, q >= 0 and p + q <= 1 (got p={p}, q={q})")
            }
            ModelError::Exhausted { context } => {
                write!(f, "no candidate left for weighted draw: {context}")
            }
        }
    }
}

impl Error for ModelError {}

/// Dispatch a [`ModelSpec`] to its family generator.
pub fn generate(spec: &ModelSpec) -> Result<Graph, ModelError> {
    match *spec {
        ModelSpec::Er { nodes, links, seed } => generate_er(nodes, links, seed),
        ModelSpec::Ba { nodes, links, links_per_node, seed } => {
            generate_ba(nodes, links, links_per_node, seed)
        }
        ModelSpec::Pfp { nodes, links, ref params, seed } => {
            generate_pfp(nodes, links, params, seed)
        }
    }
}

fn pair_count(nodes: usize) -> u128 {
    nodes as u128 * (nodes as u128 - if nodes == 0 { 0 } else { 1 }) / 2
}

fn check_node_range(nodes: usize) -> Result<(), ModelError> {
    if nodes > u32::MAX as usize {
        return Err(ModelError::NodeCountRange { nodes });
    }
    Ok(())
}

fn decimal_labels(nodes: usize) -> Vec<String> {
    (0..nodes).map(|i| i.to_string()).collect()
}

fn finish(labels: Vec<String>, edges: &[(NodeId, NodeId)]) -> Graph {
    Graph::from_edges(labels, edges).expect("generator emitted a simple graph")
}

/// Uniform random graph with exactly `links` distinct undirected pairs,
/// sampled without replacement. Sparse targets use rejection sampling with
/// a seen-set; targets at half density or more select a uniform
/// `links`-subset of the enumerated pair list instead.
pub fn generate_er(nodes: usize, links: usize, seed: u64) -> Result<Graph, ModelError> {
    check_node_range(nodes)?;
    let total = pair_count(nodes);
    if links as u128 > total {
        return Err(ModelError::TooManyLinks { nodes, links });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = nodes as u32;
    let edges: Vec<(NodeId, NodeId)> = if 2 * links as u128 >= total {
        let mut all: Vec<(NodeId, NodeId)> =
            (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
        for i in 0..links {
            let j = rng.random_range(i..all.len());
            all.swap(i, j);
        }
        all.truncate(links);
        all
    } else {
        let mut seen: HashSet<u64> = HashSet::with_capacity(links * 2);
        let mut edges = Vec::with_capacity(links);
        while edges.len() < links {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u == v {
                continue;
            }
            let (a, b) = (u.min(v), u.max(v));
            if seen.insert(a as u64 * nodes as u64 + b as u64) {
                edges.push((a, b));
            }
        }
        edges
    };
    Ok(finish(decimal_labels(nodes), &edges))
}

/// Scale-free graph: complete 7-node seed, then each new node attaches
/// `links_per_node` distinct links to existing nodes drawn with probability
/// proportional to current degree (uniform over the running edge-endpoint
/// list, redrawing repeats within a step; the step's own links join the
/// list only after the step). `links` must equal the total this process
/// yields; node counts below 7 shrink the seed to a complete graph.
pub fn generate_ba(
    nodes: usize,
    links: usize,
    links_per_node: u32,
    seed: u64,
) -> Result<Graph, ModelError> {
    check_node_range(nodes)?;
    let max_m = 7.min(nodes.saturating_sub(1)) as u32;
    if links_per_node < 1 || links_per_node > max_m {
        return Err(ModelError::BaLinksPerNode { links_per_node, max: max_m });
    }
    let m = links_per_node as usize;
    let seed_nodes = nodes.min(7);
    let expected = pair_count(seed_nodes) as usize + m * (nodes - seed_nodes);
    if links != expected {
        return Err(ModelError::BaLinkCount { requested: links, expected });
    }

    let mut edges: Vec<(NodeId, NodeId)> = (0..seed_nodes as u32)
        .flat_map(|u| ((u + 1)..seed_nodes as u32).map(move |v| (u, v)))
        .collect();
    let mut endpoints: Vec<NodeId> = Vec::with_capacity(2 * links);
    for &(u, v) in &edges {
        endpoints.push(u);
        endpoints.push(v);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut targets: Vec<NodeId> = Vec::with_capacity(m);
    for w in seed_nodes as u32..nodes as u32 {
        targets.clear();
        while targets.len() < m {
            let t = endpoints[rng.random_range(0..endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((t, w));
        }
        for &t in &targets {
            endpoints.push(t);
            endpoints.push(w);
        }
    }
    Ok(finish(decimal_labels(nodes), &edges))
}

/// Fenwick tree over per-node weights, supporting point updates and
/// cumulative-sum inversion for weighted draws.
struct Fenwick {
    len: usize,
    tree: Vec<f64>,
}

impl Fenwick {
    fn new(len: usize) -> Fenwick {
        Fenwick { len, tree: vec![0.0; len + 1] }
    }

    fn add(&mut self, index: usize, delta: f64) {
        let mut i = index + 1;
        while i <= self.len {
            self.tree[i] += delta;
            i += i & i.wrapping_neg();
        }
    }

    fn total(&self) -> f64 {
        let mut i = self.len;
        let mut sum = 0.0;
        while i > 0 {
            sum += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        sum
    }

    /// Smallest index whose cumulative weight exceeds `t`; callers pass
    /// `t < total()`, and floating drift at the boundary is clamped to the
    /// last index.
    fn search(&self, mut t: f64) -> usize {
        let mut pos = 0usize;
        let mut mask = if self.len == 0 {
            0
        } else {
            1usize << (usize::BITS - 1 - self.len.leading_zeros())
        };
        while mask > 0 {
            let next = pos + mask;
            if next <= self.len && self.tree[next] <= t {
                t -= self.tree[next];
                pos = next;
            }
            mask >>= 1;
        }
        pos.min(self.len.saturating_sub(1))
    }
}

/// Growth state for the positive-feedback process.
struct PfpBuilder {
    node_target: usize,
    link_target: usize,
    delta: f64,
    nodes: usize,
    edges: Vec<(NodeId, NodeId)>,
    adjacency: Vec<HashSet<NodeId>>,
    degrees: Vec<u32>,
    weights: Fenwick,
}

impl PfpBuilder {
    fn new(node_target: usize, link_target: usize, delta: f64) -> PfpBuilder {
        PfpBuilder {
            node_target,
            link_target,
            delta,
            nodes: 0,
            edges: Vec::with_capacity(link_target),
            adjacency: vec![HashSet::new(); node_target],
            degrees: vec![0; node_target],
            weights: Fenwick::new(node_target),
        }
    }

    /// Preference weight `k^(1 + delta·log₁₀ k)`; degree 1 weighs exactly 1.
    fn weight(&self, degree: u32) -> f64 {
        if degree == 0 {
            return 0.0;
        }
        let lk = (degree as f64).ln();
        (lk + self.delta * lk * lk / std::f64::consts::LN_10).exp()
    }

    fn add_node(&mut self) -> NodeId {
        let id = self.nodes as NodeId;
        self.nodes += 1;
        id
    }

    fn links(&self) -> usize {
        self.edges.len()
    }

    fn adjacent(&self, a: NodeId, b: NodeId) -> bool {
        self.adjacency[a as usize].contains(&b)
    }

    fn add_link(&mut self, a: NodeId, b: NodeId) {
        debug_assert!(a != b && !self.adjacent(a, b), "link {a}-{b} would break simplicity");
        self.edges.push((a, b));
        self.adjacency[a as usize].insert(b);
        self.adjacency[b as usize].insert(a);
        for x in [a, b] {
            let k = self.degrees[x as usize];
            self.weights.add(x as usize, self.weight(k + 1) - self.weight(k));
            self.degrees[x as usize] = k + 1;
        }
    }

    /// Draw one node with probability proportional to its preference
    /// weight, restricted to `valid` candidates: bounded rejection off the
    /// full tree first, then an exact draw over the enumerated restriction.
    /// Both stages realize the same renormalized distribution. Returns
    /// `None` only when no candidate is valid.
    fn sample<R: Rng>(&self, rng: &mut R, valid: &dyn Fn(NodeId) -> bool) -> Option<NodeId> {
        let total = self.weights.total();
        if total > 0.0 {
            for _ in 0..64 {
                let t = rng.random::<f64>() * total;
                let candidate = self.weights.search(t) as NodeId;
                if self.degrees[candidate as usize] > 0 && valid(candidate) {
                    return Some(candidate);
                }
            }
        }
        let candidates: Vec<(NodeId, f64)> = (0..self.nodes as NodeId)
            .filter(|&c| self.degrees[c as usize] > 0 && valid(c))
            .map(|c| (c, self.weight(self.degrees[c as usize])))
            .collect();
        let restricted: f64 = candidates.iter().map(|(_, w)| w).sum();
        if candidates.is_empty() || restricted <= 0.0 {
            return None;
        }
        let mut t = rng.random::<f64>() * restricted;
        for &(c, w) in &candidates {
            if w > t {
                return Some(c);
            }
            t -= w;
        }
        Some(candidates.last().expect("nonempty").0)
    }

    /// Uniform random recursive tree on `min(node_target, 10)` nodes plus
    /// up to five uniform extra links, capped by pair capacity and by the
    /// link budget that must stay reserved for attaching the remaining
    /// `node_target − seed` nodes.
    fn build_seed<R: Rng>(&mut self, rng: &mut R) {
        let s = self.node_target.min(10);
        if s == 0 {
            return;
        }
        self.add_node();
        for i in 1..s {
            let parent = rng.random_range(0..i as u32);
            let id = self.add_node();
            self.add_link(id, parent);
        }
        let capacity = (pair_count(s) as usize) - (s - 1);
        let budget = self.link_target - (self.node_target - 1);
        let extras = 5.min(capacity).min(budget);
        for _ in 0..extras {
            let mut added = false;
            for _ in 0..64 {
                let a = rng.random_range(0..s as u32);
                let b = rng.random_range(0..s as u32);
                if a != b && !self.adjacent(a, b) {
                    self.add_link(a, b);
                    added = true;
                    break;
                }
            }
            if !added {
                let open: Vec<(NodeId, NodeId)> = (0..s as u32)
                    .flat_map(|u| ((u + 1)..s as u32).map(move |v| (u, v)))
                    .filter(|&(u, v)| !self.adjacent(u, v))
                    .collect();
                let pick = open[rng.random_range(0..open.len())];
                self.add_link(pick.0, pick.1);
            }
        }
    }

    /// One interactive-growth step: with probability `p` a new node joins
    /// one host and the host gains two new peer links; with probability `q`
    /// a new node joins one host and the host gains one peer link;
    /// otherwise a new node joins two hosts and the first host gains one
    /// peer link. All participants within a step are distinct, peer links
    /// never duplicate existing links, and any link beyond the first
    /// attachment is skipped while the remaining-node reserve would
    /// otherwise overrun the link target.
    fn grow_step<R: Rng>(&mut self, rng: &mut R, p: f64, q: f64) -> Result<(), ModelError> {
        let remaining_after = self.node_target - (self.nodes + 1);
        let cap = self.link_target - remaining_after;
        let mut budget = cap - self.links();
        debug_assert!(budget >= 1, "reserve invariant guarantees the first attachment");

        let draw: f64 = rng.random();
        let (two_hosts, peer_links) = if draw < p {
            (false, 2)
        } else if draw < p + q {
            (false, 1)
        } else {
            (true, 1)
        };

        let h1 = self
            .sample(rng, &|_| true)
            .ok_or(ModelError::Exhausted { context: "host draw" })?;
        budget -= 1;
        let mut chosen = vec![h1];

        let h2 = if two_hosts && budget > 0 {
            let taken = chosen.clone();
            match self.sample(rng, &|c| !taken.contains(&c)) {
                Some(h) => {
                    chosen.push(h);
                    budget -= 1;
                    Some(h)
                }
                None => None,
            }
        } else {
            None
        };

        let mut peers = Vec::with_capacity(peer_links);
        for _ in 0..peer_links {
            if budget == 0 {
                break;
            }
            let taken = chosen.clone();
            match self.sample(rng, &|c| {
                c != h1 && !taken.contains(&c) && !self.adjacent(h1, c)
            }) {
                Some(peer) => {
                    chosen.push(peer);
                    peers.push(peer);
                    budget -= 1;
                }
                None => break,
            }
        }

        let new = self.add_node();
        self.add_link(new, h1);
        if let Some(h2) = h2 {
            self.add_link(new, h2);
        }
        for peer in peers {
            self.add_link(h1, peer);
        }
        Ok(())
    }

    /// Close any remaining gap to the link target with preference-chosen
    /// non-adjacent pairs.
    fn pad<R: Rng>(&mut self, rng: &mut R) -> Result<(), ModelError> {
        while self.links() < self.link_target {
            let nodes = self.nodes;
            let a = self
                .sample(rng, &|c| self.adjacency[c as usize].len() + 1 < nodes)
                .ok_or(ModelError::Exhausted { context: "pad draw with an open pair left" })?;
            let b = self
                .sample(rng, &|c| c != a && !self.adjacent(a, c))
                .ok_or(ModelError::Exhausted { context: "pad partner draw" })?;
            self.add_link(a, b);
        }
        Ok(())
    }
}

/// Positive-feedback preference growth hitting `nodes` and `links` exactly:
/// seeded random tree plus extras, interactive-growth steps until the node
/// target, then preference-weighted padding up to the link target.
pub fn generate_pfp(
    nodes: usize,
    links: usize,
    params: &PfpParams,
    seed: u64,
) -> Result<Graph, ModelError> {
    check_node_range(nodes)?;
    let PfpParams { p, q, delta } = *params;
    if !(p >= 0.0 && q >= 0.0 && p + q <= 1.0) {
        return Err(ModelError::PfpParamRange { p, q });
    }
    if links as u128 > pair_count(nodes) {
        return Err(ModelError::TooManyLinks { nodes, links });
    }
    if links + 1 < nodes {
        return Err(ModelError::TooFewLinks { nodes, links });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut builder = PfpBuilder::new(nodes, links, delta);
    builder.build_seed(&mut rng);
    while builder.nodes < nodes {
        builder.grow_step(&mut rng, p, q)?;
    }
    builder.pad(&mut rng)?;
    let PfpBuilder { edges, .. } = builder;
    Ok(finish(decimal_labels(nodes), &edges))
}
