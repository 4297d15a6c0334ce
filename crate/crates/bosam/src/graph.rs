//! Immutable simple undirected graph with dense internal ids.
//!
//! Internal ids are assigned by first appearance in the input and double as
//! the final deterministic tie-break everywhere else in the crate. Adjacency
//! is compressed sparse rows with each row sorted, so neighbor scans and
//! symmetry checks are cache-friendly and deterministic.

use std::collections::HashMap;
use std::error::Error;
use std::fmt;
use std::io::{self, BufRead, Write};

/// Dense internal node id. Ids are `[0, N)` in first-appearance order.
pub type NodeId = u32;

/// Immutable simple undirected graph.
///
/// Invariants (enforced by every constructor): no self-loops, no duplicate
/// edges, adjacency rows sorted ascending, `v ∈ adj(u) ⇔ u ∈ adj(v)`, and
/// the adjacency entry total is exactly `2·link_count`.
#[derive(Clone)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<NodeId>,
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
}

impl fmt::Debug for Graph {
    /// Compact form: counts plus the canonical edge list, which identifies
    /// small graphs completely without dumping the raw CSR arrays.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph({} nodes, {} links: {:?})",
            self.node_count(),
            self.link_count(),
            self.edges().collect::<Vec<_>>()
        )
    }
}

/// Counts of input lines discarded by [`Graph::parse_edge_list`] to keep the
/// graph simple.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseReport {
    pub self_loops_dropped: u64,
    pub duplicate_edges_dropped: u64,
}

/// Degree plus both sorted neighbor-degree sequences for one node.
///
/// `neighbor_degrees_desc` reversed always equals `neighbor_degrees_asc`;
/// both have exactly `degree` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSequenceView {
    pub node: NodeId,
    pub degree: usize,
    pub neighbor_degrees_desc: Vec<u32>,
    pub neighbor_degrees_asc: Vec<u32>,
}

/// Edge-list text could not be parsed.
#[derive(Debug)]
pub enum ParseError {
    /// A non-comment line did not hold exactly two tokens.
    MalformedLine { line: u64, tokens: usize },
    Io(io::Error),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::MalformedLine { line, tokens } => {
                write!(f, "line {line}: expected 2 tokens, found {tokens}")
            }
            ParseError::Io(e) => write!(f, "read failed: {e}"),
        }
    }
}

impl Error for ParseError {}

impl From<io::Error> for ParseError {
    fn from(e: io::Error) -> Self {
        ParseError::Io(e)
    }
}

/// A structural rule of [`Graph`] was violated.
#[derive(Debug, PartialEq, Eq)]
pub enum GraphError {
    NodeOutOfRange { node: NodeId, node_count: usize },
    SelfLoop { node: NodeId },
    DuplicateEdge { a: NodeId, b: NodeId },
    DuplicateLabel { label: String },
    /// The graph has no nodes, so there is no component to extract.
    NoComponent,
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::NodeOutOfRange { node, node_count } => {
                write!(f, "node {node} out of range (node count {node_count})")
            }
            GraphError::SelfLoop { node } => write!(f, "self-loop at node {node}"),
            GraphError::DuplicateEdge { a, b } => write!(f, "duplicate edge {a}-{b}"),
            GraphError::DuplicateLabel { label } => write!(f, "duplicate label {label:?}"),
            GraphError::NoComponent => write!(f, "no component: empty graph"),
        }
    }
}

impl Error for GraphError {}

impl Graph {
    /// Parse edge-list text: one edge per line as two whitespace-separated
    /// labels, `#` comment lines and blank lines skipped. Self-loops and
    /// duplicate undirected edges are dropped and counted in the report; a
    /// dropped self-loop still registers its endpoint's first appearance.
    /// Empty input is the empty graph, not an error.
    pub fn parse_edge_list<R: BufRead>(mut source: R) -> Result<(Graph, ParseReport), ParseError> {
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, NodeId> = HashMap::new();
        let mut pairs: Vec<(NodeId, NodeId)> = Vec::new();
        let mut report = ParseReport::default();

        let mut line = String::new();
        let mut line_no: u64 = 0;
        loop {
            line.clear();
            if source.read_line(&mut line)? == 0 {
                break;
            }
            line_no += 1;
            let trimmed = line.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut tokens = trimmed.split_whitespace();
            let (a, b) = match (tokens.next(), tokens.next()) {
                (Some(a), Some(b)) => (a, b),
                (Some(_), None) => {
                    return Err(ParseError::MalformedLine { line: line_no, tokens: 1 })
                }
                _ => unreachable!("non-blank line yields at least one token"),
            };
            let extra = tokens.count();
            if extra > 0 {
                return Err(ParseError::MalformedLine { line: line_no, tokens: 2 + extra });
            }

            let u = intern(&mut labels, &mut index, a);
            let v = intern(&mut labels, &mut index, b);
            if u == v {
                report.self_loops_dropped += 1;
                continue;
            }
            pairs.push((u.min(v), u.max(v)));
        }

        pairs.sort_unstable();
        let before = pairs.len();
        pairs.dedup();
        report.duplicate_edges_dropped = (before - pairs.len()) as u64;

        let graph = Graph::from_csr(labels, index, &pairs);
        Ok((graph, report))
    }

    /// [`Graph::parse_edge_list`] over an in-memory string, discarding the
    /// drop report.
    pub fn parse_str(text: &str) -> Result<Graph, ParseError> {
        Ok(Graph::parse_edge_list(text.as_bytes())?.0)
    }

    /// Build a graph from explicit labels and undirected edges. Unlike the
    /// parser this rejects self-loops, duplicate edges, and duplicate labels:
    /// callers constructing graphs programmatically should never produce
    /// them, so an occurrence is a bug worth surfacing.
    pub fn from_edges(labels: Vec<String>, edges: &[(NodeId, NodeId)]) -> Result<Graph, GraphError> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (id, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), id as NodeId).is_some() {
                return Err(GraphError::DuplicateLabel { label: label.clone() });
            }
        }
        let mut pairs = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            for node in [a, b] {
                if node as usize >= n {
                    return Err(GraphError::NodeOutOfRange { node, node_count: n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop { node: a });
            }
            pairs.push((a.min(b), a.max(b)));
        }
        pairs.sort_unstable();
        if let Some(w) = pairs.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge { a: w[0].0, b: w[0].1 });
        }
        Ok(Graph::from_csr(labels, index, &pairs))
    }

    /// `pairs` must be canonical (u < v), sorted, and deduplicated.
    fn from_csr(
        labels: Vec<String>,
        index: HashMap<String, NodeId>,
        pairs: &[(NodeId, NodeId)],
    ) -> Graph {
        let n = labels.len();
        let mut offsets = vec![0usize; n + 1];
        for &(u, v) in pairs {
            offsets[u as usize + 1] += 1;
            offsets[v as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut neighbors = vec![0 as NodeId; pairs.len() * 2];
        for &(u, v) in pairs {
            neighbors[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            neighbors[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        for u in 0..n {
            neighbors[offsets[u]..offsets[u + 1]].sort_unstable();
        }
        Graph { offsets, neighbors, labels, index }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn link_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn degree(&self, node: NodeId) -> usize {
        let u = node as usize;
        self.offsets[u + 1] - self.offsets[u]
    }

    /// Neighbor ids of `node`, sorted ascending.
    pub fn neighbors(&self, node: NodeId) -> &[NodeId] {
        let u = node as usize;
        &self.neighbors[self.offsets[u]..self.offsets[u + 1]]
    }

    pub fn label(&self, node: NodeId) -> &str {
        &self.labels[node as usize]
    }

    pub fn id_of(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.node_count() as NodeId).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Degree and both sorted neighbor-degree sequences for `node`.
    pub fn degree_view(&self, node: NodeId) -> Result<DegreeSequenceView, GraphError> {
        if node as usize >= self.node_count() {
            return Err(GraphError::NodeOutOfRange { node, node_count: self.node_count() });
        }
        let mut asc: Vec<u32> = self.neighbors(node).iter().map(|&v| self.degree(v) as u32).collect();
        asc.sort_unstable();
        let mut desc = asc.clone();
        desc.reverse();
        Ok(DegreeSequenceView {
            node,
            degree: asc.len(),
            neighbor_degrees_desc: desc,
            neighbor_degrees_asc: asc,
        })
    }

    /// Induced subgraph on the largest connected component, ties broken by
    /// the component containing the smallest internal id. Labels carry over;
    /// internal ids are reassigned in ascending original-id order.
    pub fn largest_component(&self) -> Result<Graph, GraphError> {
        let n = self.node_count();
        if n == 0 {
            return Err(GraphError::NoComponent);
        }
        let mut component = vec![u32::MAX; n];
        let mut sizes: Vec<usize> = Vec::new();
        let mut queue: Vec<NodeId> = Vec::new();
        for start in 0..n as NodeId {
            if component[start as usize] != u32::MAX {
                continue;
            }
            let id = sizes.len() as u32;
            let mut size = 0usize;
            component[start as usize] = id;
            queue.push(start);
            while let Some(u) = queue.pop() {
                size += 1;
                for &v in self.neighbors(u) {
                    if component[v as usize] == u32::MAX {
                        component[v as usize] = id;
                        queue.push(v);
                    }
                }
            }
            sizes.push(size);
        }
        // Scanning seeds in ascending id order makes the first maximum the
        // smallest-id tie winner.
        let best = sizes
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .map(|(id, _)| id as u32)
            .expect("n > 0 yields at least one component");

        let mut remap = vec![u32::MAX; n];
        let mut labels = Vec::with_capacity(sizes[best as usize]);
        for u in 0..n {
            if component[u] == best {
                remap[u] = labels.len() as NodeId;
                labels.push(self.labels[u].clone());
            }
        }
        let mut pairs: Vec<(NodeId, NodeId)> = Vec::new();
        for (u, v) in self.edges() {
            if component[u as usize] == best {
                pairs.push((remap[u as usize], remap[v as usize]));
            }
        }
        pairs.sort_unstable();
        let mut index = HashMap::with_capacity(labels.len());
        for (id, label) in labels.iter().enumerate() {
            index.insert(label.clone(), id as NodeId);
        }
        Ok(Graph::from_csr(labels, index, &pairs))
    }

    /// Write the graph as edge-list text that reparses to identical internal
    /// ids. Each edge is emitted once in the block of its larger endpoint;
    /// a node with no smaller-id neighbor (including isolated nodes) is
    /// introduced by a `label label` self-loop line, which the parser drops
    /// after registering the label. Returns bytes written.
    pub fn write_edge_list<W: Write>(&self, mut sink: W) -> io::Result<u64> {
        let mut written = 0u64;
        let mut buf = String::new();
        for w in 0..self.node_count() as NodeId {
            let row = self.neighbors(w);
            let smaller = row.partition_point(|&v| v < w);
            buf.clear();
            if smaller == 0 {
                let label = self.label(w);
                buf.push_str(label);
                buf.push(' ');
                buf.push_str(label);
                buf.push('\n');
            }
            for &v in &row[..smaller] {
                buf.push_str(self.label(v));
                buf.push(' ');
                buf.push_str(self.label(w));
                buf.push('\n');
            }
            sink.write_all(buf.as_bytes())?;
            written += buf.len() as u64;
        }
        Ok(written)
    }

    /// Edge-list text per [`Graph::write_edge_list`].
    pub fn to_edge_list_string(&self) -> String {
        let mut out = Vec::new();
        self.write_edge_list(&mut out).expect("vec write cannot fail");
        String::from_utf8(out).expect("labels are UTF-8")
    }
}

fn intern(labels: &mut Vec<String>, index: &mut HashMap<String, NodeId>, token: &str) -> NodeId {
    if let Some(&id) = index.get(token) {
        return id;
    }
    let id = labels.len() as NodeId;
    labels.push(token.to_string());
    index.insert(token.to_string(), id);
    id
}
