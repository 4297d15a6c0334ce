//! Topology statistics for interpreting sorted-adjacency-matrix bitmaps:
//! degree distribution and CCDF, maximum-likelihood power-law exponent,
//! degree-degree correlation, rank-based rich-club connectivity, average
//! neighbor degree, and mean shortest path.

use crate::graph::{Graph, NodeId};
use crate::ordering::{bosam_order, OrderingMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use std::collections::VecDeque;
use std::error::Error;
use std::fmt;

/// A statistic's precondition failed.
#[derive(Debug, PartialEq, Eq)]
pub enum MetricsError {
    EmptyGraph,
    NoLinks,
    InvalidKmin { kmin: u32 },
    /// Fewer than 10 nodes at or above `kmin`.
    InsufficientTail { tail: usize },
    /// Every tail degree equals `kmin`; the likelihood has no maximum.
    DegenerateTail { kmin: u32 },
    RankOutOfRange { rank: u32, node_count: usize },
    /// The largest component has fewer than 2 nodes.
    NoPairs,
    NoSources,
}

impl fmt::Display for MetricsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricsError::EmptyGraph => write!(f, "empty graph"),
            MetricsError::NoLinks => write!(f, "no links"),
            MetricsError::InvalidKmin { kmin } => {
                write!(f, "kmin must be at least 1 (got {kmin})")
            }
            MetricsError::InsufficientTail { tail } => {
                write!(f, "insufficient tail: {tail} nodes at or above kmin, need 10")
            }
            MetricsError::DegenerateTail { kmin } => {
                write!(f, "degenerate tail: every tail degree equals kmin {kmin}")
            }
            MetricsError::RankOutOfRange { rank, node_count } => {
                write!(f, "rank {rank} out of range [2, {node_count}]")
            }
            MetricsError::NoPairs => {
                write!(f, "no pairs: largest component has fewer than 2 nodes")
            }
            MetricsError::NoSources => {
                write!(f, "no sources: sampled mean path needs at least one source")
            }
        }
    }
}

impl Error for MetricsError {}

/// Maximum-likelihood power-law tail fit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PowerlawFit {
    pub exponent: f64,
    pub kmin: u32,
    pub n_tail: u64,
}

/// Mean shortest path over the largest component.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MeanPath {
    pub hops: f64,
    pub exact: bool,
    pub sources_sampled: u64,
}

/// Exact degree histogram and complementary cumulative distribution: for
/// each observed degree `k`, the fraction of nodes with degree ≥ `k`.
pub fn degree_ccdf(
    graph: &Graph,
) -> Result<(BTreeMap<u32, u64>, BTreeMap<u32, f64>), MetricsError> {
    let n = graph.node_count();
    if n == 0 {
        return Err(MetricsError::EmptyGraph);
    }
    let mut histogram: BTreeMap<u32, u64> = BTreeMap::new();
    for u in 0..n as NodeId {
        *histogram.entry(graph.degree(u) as u32).or_insert(0) += 1;
    }
    let mut ccdf = BTreeMap::new();
    let mut at_or_above = 0u64;
    for (&k, &count) in histogram.iter().rev() {
        at_or_above += count;
        ccdf.insert(k, at_or_above as f64 / n as f64);
    }
    Ok((histogram, ccdf))
}

/// Discrete maximum-likelihood exponent over the degrees at or above
/// `kmin`: `alpha = 1 + n_tail / Σ ln(k_i / (kmin − 0.5))`.
pub fn fit_powerlaw(graph: &Graph, kmin: u32) -> Result<PowerlawFit, MetricsError> {
    let degrees: Vec<u32> =
        (0..graph.node_count() as NodeId).map(|u| graph.degree(u) as u32).collect();
    fit_powerlaw_degrees(&degrees, kmin)
}

/// [`fit_powerlaw`] over a raw degree sample.
pub fn fit_powerlaw_degrees(degrees: &[u32], kmin: u32) -> Result<PowerlawFit, MetricsError> {
    if kmin < 1 {
        return Err(MetricsError::InvalidKmin { kmin });
    }
    let tail: Vec<u32> = degrees.iter().copied().filter(|&k| k >= kmin).collect();
    if tail.len() < 10 {
        return Err(MetricsError::InsufficientTail { tail: tail.len() });
    }
    if tail.iter().all(|&k| k == kmin) {
        return Err(MetricsError::DegenerateTail { kmin });
    }
    let shift = kmin as f64 - 0.5;
    let log_sum: f64 = tail.iter().map(|&k| (k as f64 / shift).ln()).sum();
    Ok(PowerlawFit {
        exponent: 1.0 + tail.len() as f64 / log_sum,
        kmin,
        n_tail: tail.len() as u64,
    })
}

/// Pearson correlation of endpoint degrees over all oriented edges (each
/// link contributes both orientations). `Ok(None)` when the degree pairs
/// have zero variance, as on regular graphs.
pub fn assortativity(graph: &Graph) -> Result<Option<f64>, MetricsError> {
    let two_m = 2 * graph.link_count();
    if two_m == 0 {
        return Err(MetricsError::NoLinks);
    }
    let n = graph.node_count() as NodeId;
    let degrees: Vec<f64> = (0..n).map(|u| graph.degree(u) as f64).collect();

    // Both orientations of every link make the x and y samples the same
    // multiset, so one mean serves both sides. Pairs are enumerated in
    // canonical order (u ascending, then the sorted neighbor row), one
    // accumulation per oriented pair.
    let mut sum = 0.0;
    for u in 0..n {
        for _v in graph.neighbors(u) {
            sum += degrees[u as usize];
        }
    }
    let mean = sum / two_m as f64;

    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for u in 0..n {
        for &v in graph.neighbors(u) {
            let dx = degrees[u as usize] - mean;
            let dy = degrees[v as usize] - mean;
            sxx += dx * dx;
            syy += dy * dy;
            sxy += dx * dy;
        }
    }
    if sxx == 0.0 || syy == 0.0 {
        return Ok(None);
    }
    Ok(Some(sxy / (sxx * syy).sqrt()))
}

/// For each observed degree `k ≥ 1`, the mean over nodes of degree `k` of
/// their neighbors' average degree.
pub fn avg_neighbor_degree(graph: &Graph) -> Result<BTreeMap<u32, f64>, MetricsError> {
    if graph.link_count() == 0 {
        return Err(MetricsError::NoLinks);
    }
    let mut sums: BTreeMap<u32, (f64, u64)> = BTreeMap::new();
    for u in 0..graph.node_count() as NodeId {
        let k = graph.degree(u) as u32;
        if k == 0 {
            continue;
        }
        let neighbor_mean = graph
            .neighbors(u)
            .iter()
            .map(|&v| graph.degree(v) as f64)
            .sum::<f64>()
            / k as f64;
        let entry = sums.entry(k).or_insert((0.0, 0));
        entry.0 += neighbor_mean;
        entry.1 += 1;
    }
    Ok(sums.into_iter().map(|(k, (total, count))| (k, total / count as f64)).collect())
}

/// Rich-club connectivity at each requested rank: with nodes in the
/// cohesion ordering, `phi(r) = 2·E(r) / (r·(r−1))` where `E(r)` counts the
/// links among the top `r` nodes. Ranks must lie in `[2, N]`.
pub fn rich_club(graph: &Graph, ranks: &[u32]) -> Result<Vec<(u32, f64)>, MetricsError> {
    let n = graph.node_count();
    for &r in ranks {
        if r < 2 || r as usize > n {
            return Err(MetricsError::RankOutOfRange { rank: r, node_count: n });
        }
    }
    let ordering = bosam_order(graph, OrderingMode::Cohesion);
    // links_to_rank[r] counts links whose later endpoint sits at position r;
    // its prefix sum is E(r).
    let mut links_to_rank = vec![0u64; n + 1];
    for (u, v) in graph.edges() {
        let outer = ordering.position_of(u).max(ordering.position_of(v));
        links_to_rank[outer as usize] += 1;
    }
    for r in 1..=n {
        links_to_rank[r] += links_to_rank[r - 1];
    }
    Ok(ranks
        .iter()
        .map(|&r| {
            let inside = links_to_rank[r as usize] as f64;
            (r, 2.0 * inside / (r as f64 * (r as f64 - 1.0)))
        })
        .collect())
}

/// Mean shortest-path hops over the largest component (extracted
/// internally). Components up to `max_exact_n` nodes get the exact mean
/// over all ordered pairs via a breadth-first search from every node;
/// larger components are estimated from `sample_sources` distinct sources
/// drawn seeded-uniform.
pub fn mean_shortest_path(
    graph: &Graph,
    max_exact_n: usize,
    sample_sources: usize,
    seed: u64,
) -> Result<MeanPath, MetricsError> {
    let component = graph.largest_component().map_err(|_| MetricsError::EmptyGraph)?;
    let size = component.node_count();
    if size < 2 {
        return Err(MetricsError::NoPairs);
    }

    let exact = size <= max_exact_n;
    let sources: Vec<NodeId> = if exact {
        (0..size as NodeId).collect()
    } else {
        if sample_sources == 0 {
            return Err(MetricsError::NoSources);
        }
        let k = sample_sources.min(size);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut ids: Vec<NodeId> = (0..size as NodeId).collect();
        for i in 0..k {
            let j = rng.random_range(i..size);
            ids.swap(i, j);
        }
        ids.truncate(k);
        ids
    };

    let mut total_hops = 0u64;
    let mut dist = vec![u32::MAX; size];
    let mut queue = VecDeque::new();
    for &source in &sources {
        dist.fill(u32::MAX);
        dist[source as usize] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            for &v in component.neighbors(u) {
                if dist[v as usize] == u32::MAX {
                    dist[v as usize] = du + 1;
                    queue.push_back(v);
                }
            }
        }
        // The component is connected, so every distance is finite.
        total_hops += dist.iter().map(|&d| d as u64).sum::<u64>();
    }

    let pair_count = sources.len() as u64 * (size as u64 - 1);
    Ok(MeanPath {
        hops: total_hops as f64 / pair_count as f64,
        exact,
        sources_sampled: sources.len() as u64,
    })
}

/// Rank ladder used when the caller picks none: powers of two up to the
/// node count, plus the node count itself.
pub fn default_ranks(node_count: usize) -> Vec<u32> {
    let mut ranks: Vec<u32> = Vec::new();
    let mut r = 2usize;
    while r <= node_count {
        ranks.push(r as u32);
        r *= 2;
    }
    if node_count >= 2 && ranks.last() != Some(&(node_count as u32)) {
        ranks.push(node_count as u32);
    }
    ranks
}

/// Knobs for [`MetricsReport::compute`].
#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub kmin: u32,
    /// Rich-club ranks; `None` uses [`default_ranks`].
    pub ranks: Option<Vec<u32>>,
    pub sample_sources: usize,
    pub max_exact_n: usize,
    pub seed: u64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { kmin: 5, ranks: None, sample_sources: 1000, max_exact_n: 20_000, seed: 0 }
    }
}

/// Full statistics bundle, serialized as a JSON document with exactly
/// these field names.
#[derive(Clone, Debug, Serialize)]
pub struct MetricsReport {
    pub degree_histogram: BTreeMap<u32, u64>,
    pub ccdf: BTreeMap<u32, f64>,
    /// Absent when the degree tail is too small or degenerate to fit.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub powerlaw: Option<PowerlawFit>,
    /// `null` when the endpoint degrees have zero variance.
    pub assortativity: Option<f64>,
    pub rich_club: Vec<(u32, f64)>,
    pub mean_path: MeanPath,
}

impl MetricsReport {
    /// Compute every statistic. A tail too thin to fit leaves `powerlaw`
    /// absent; every other precondition failure (empty graph, no links,
    /// invalid kmin or ranks) is an error.
    pub fn compute(graph: &Graph, options: &ReportOptions) -> Result<MetricsReport, MetricsError> {
        let (degree_histogram, ccdf) = degree_ccdf(graph)?;
        let powerlaw = match fit_powerlaw(graph, options.kmin) {
            Ok(fit) => Some(fit),
            Err(MetricsError::InsufficientTail { .. }) | Err(MetricsError::DegenerateTail { .. }) => {
                None
            }
            Err(e) => return Err(e),
        };
        let assortativity = assortativity(graph)?;
        let ranks = match &options.ranks {
            Some(ranks) => ranks.clone(),
            None => default_ranks(graph.node_count()),
        };
        let rich_club = rich_club(graph, &ranks)?;
        let mean_path = mean_shortest_path(
            graph,
            options.max_exact_n,
            options.sample_sources,
            options.seed,
        )?;
        Ok(MetricsReport {
            degree_histogram,
            ccdf,
            powerlaw,
            assortativity,
            rich_club,
            mean_path,
        })
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
