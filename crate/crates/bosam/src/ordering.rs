//! Degree-sorted node orderings for sorted-adjacency-matrix bitmaps.
//!
//! Both modes sort by decreasing degree. Ties are broken by the node's
//! sorted neighbor-degree sequence — the part that decides how equal-degree
//! nodes cluster in the rendered matrix — and finally by internal id, which
//! makes every ordering a pure function of the graph.

use crate::graph::{Graph, NodeId};
use std::error::Error;
use std::fmt;
use std::io::{self, BufRead, Write};

/// Tie-break flavor between equal-degree nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderingMode {
    /// Descending neighbor-degree sequences, lexicographically greater
    /// first: nodes attached to the strongest hubs lead their degree class,
    /// pulling densely interlinked cores toward the matrix origin.
    Cohesion,
    /// Ascending neighbor-degree sequences, lexicographically smaller
    /// first: nodes attached to the weakest neighbors lead, spreading
    /// hub-attached leaves toward the end of their degree class.
    Radiation,
}

impl fmt::Display for OrderingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderingMode::Cohesion => "cohesion",
            OrderingMode::Radiation => "radiation",
        })
    }
}

/// A bijection between internal node ids and 1-based sorted positions, with
/// node degree non-increasing along positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeOrdering {
    order: Vec<NodeId>,
    position: Vec<u32>,
}

/// A proposed node sequence is not a valid degree-sorted ordering.
#[derive(Debug, PartialEq, Eq)]
pub enum OrderingError {
    WrongLength { expected: usize, found: usize },
    NodeOutOfRange { node: NodeId, node_count: usize },
    RepeatedNode { node: NodeId },
    /// Degree strictly increases from sorted index `index` to `index + 1`.
    DegreeIncreases { index: u32 },
}

impl fmt::Display for OrderingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderingError::WrongLength { expected, found } => {
                write!(f, "ordering lists {found} nodes, graph has {expected}")
            }
            OrderingError::NodeOutOfRange { node, node_count } => {
                write!(f, "node {node} out of range (node count {node_count})")
            }
            OrderingError::RepeatedNode { node } => write!(f, "node {node} listed twice"),
            OrderingError::DegreeIncreases { index } => {
                write!(f, "degree increases after sorted index {index}")
            }
        }
    }
}

impl Error for OrderingError {}

/// An ordering export could not be read back.
#[derive(Debug)]
pub enum OrderFileError {
    Malformed { line: u64 },
    IndexMismatch { line: u64, expected: u32 },
    UnknownLabel { line: u64, label: String },
    DegreeMismatch { line: u64, label: String, stated: u32, actual: u32 },
    Invalid(OrderingError),
    Io(io::Error),
}

impl fmt::Display for OrderFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderFileError::Malformed { line } => {
                write!(f, "line {line}: expected `<index> <label> <degree>`")
            }
            OrderFileError::IndexMismatch { line, expected } => {
                write!(f, "line {line}: expected sorted index {expected}")
            }
            OrderFileError::UnknownLabel { line, label } => {
                write!(f, "line {line}: label {label:?} not in graph")
            }
            OrderFileError::DegreeMismatch { line, label, stated, actual } => {
                write!(
                    f,
                    "line {line}: label {label:?} states degree {stated}, graph has {actual}"
                )
            }
            OrderFileError::Invalid(e) => write!(f, "invalid ordering: {e}"),
            OrderFileError::Io(e) => write!(f, "read failed: {e}"),
        }
    }
}

impl Error for OrderFileError {}

impl From<io::Error> for OrderFileError {
    fn from(e: io::Error) -> Self {
        OrderFileError::Io(e)
    }
}

impl From<OrderingError> for OrderFileError {
    fn from(e: OrderingError) -> Self {
        OrderFileError::Invalid(e)
    }
}

/// Sort all nodes of `graph` by decreasing degree with `mode` tie-breaks.
///
/// Equal-degree nodes compare by their sorted neighbor-degree sequences
/// (equal length within a degree class, so the comparison is purely
/// element-wise); full ties fall back to ascending internal id.
pub fn bosam_order(graph: &Graph, mode: OrderingMode) -> NodeOrdering {
    let n = graph.node_count();
    let degrees: Vec<u32> = (0..n as NodeId).map(|u| graph.degree(u) as u32).collect();

    // Materialize every node's sorted neighbor-degree sequence once into a
    // flat buffer so the comparator below is slice comparison, not repeated
    // per-comparison allocation.
    let mut starts = Vec::with_capacity(n + 1);
    starts.push(0usize);
    let mut seq: Vec<u32> = Vec::with_capacity(2 * graph.link_count());
    for u in 0..n as NodeId {
        for &v in graph.neighbors(u) {
            seq.push(degrees[v as usize]);
        }
        starts.push(seq.len());
    }
    for u in 0..n {
        let row = &mut seq[starts[u]..starts[u + 1]];
        match mode {
            OrderingMode::Cohesion => row.sort_unstable_by(|a, b| b.cmp(a)),
            OrderingMode::Radiation => row.sort_unstable(),
        }
    }

    let row = |u: NodeId| &seq[starts[u as usize]..starts[u as usize + 1]];
    let mut order: Vec<NodeId> = (0..n as NodeId).collect();
    order.sort_unstable_by(|&a, &b| {
        degrees[b as usize]
            .cmp(&degrees[a as usize])
            .then_with(|| match mode {
                OrderingMode::Cohesion => row(b).cmp(row(a)),
                OrderingMode::Radiation => row(a).cmp(row(b)),
            })
            .then(a.cmp(&b))
    });

    let mut position = vec![0u32; n];
    for (i, &u) in order.iter().enumerate() {
        position[u as usize] = i as u32 + 1;
    }
    NodeOrdering { order, position }
}

impl NodeOrdering {
    /// Wrap an explicit node sequence, validating that it is a bijection
    /// over the graph's nodes with non-increasing degrees.
    pub fn from_permutation(graph: &Graph, perm: &[NodeId]) -> Result<NodeOrdering, OrderingError> {
        let n = graph.node_count();
        if perm.len() != n {
            return Err(OrderingError::WrongLength { expected: n, found: perm.len() });
        }
        let mut position = vec![0u32; n];
        for (i, &u) in perm.iter().enumerate() {
            if u as usize >= n {
                return Err(OrderingError::NodeOutOfRange { node: u, node_count: n });
            }
            if position[u as usize] != 0 {
                return Err(OrderingError::RepeatedNode { node: u });
            }
            position[u as usize] = i as u32 + 1;
        }
        for i in 1..n {
            if graph.degree(perm[i]) > graph.degree(perm[i - 1]) {
                return Err(OrderingError::DegreeIncreases { index: i as u32 });
            }
        }
        Ok(NodeOrdering { order: perm.to_vec(), position })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// 1-based sorted position of `node`. Panics if `node` is out of range.
    pub fn position_of(&self, node: NodeId) -> u32 {
        self.position[node as usize]
    }

    /// Node at 1-based sorted position `index`. Panics unless
    /// `1 <= index <= len()`.
    pub fn node_at(&self, index: u32) -> NodeId {
        assert!(
            index >= 1 && index as usize <= self.order.len(),
            "sorted index {index} out of range 1..={}",
            self.order.len()
        );
        self.order[index as usize - 1]
    }

    /// Nodes in sorted order (slot `i` holds position `i + 1`).
    pub fn as_slice(&self) -> &[NodeId] {
        &self.order
    }

    /// Write one `<index> <label> <degree>` line per node, positions
    /// ascending from 1.
    pub fn write_order_file<W: Write>(&self, graph: &Graph, mut sink: W) -> io::Result<()> {
        let mut buf = String::new();
        for (i, &u) in self.order.iter().enumerate() {
            buf.clear();
            buf.push_str(&(i + 1).to_string());
            buf.push(' ');
            buf.push_str(graph.label(u));
            buf.push(' ');
            buf.push_str(&graph.degree(u).to_string());
            buf.push('\n');
            sink.write_all(buf.as_bytes())?;
        }
        Ok(())
    }

    /// Parse an ordering export back against `graph`, checking the index
    /// column counts 1.. contiguously, every label resolves, and each stated
    /// degree matches the graph before validating the permutation itself.
    pub fn read_order_file<R: BufRead>(
        graph: &Graph,
        mut source: R,
    ) -> Result<NodeOrdering, OrderFileError> {
        let mut perm: Vec<NodeId> = Vec::with_capacity(graph.node_count());
        let mut line = String::new();
        let mut line_no: u64 = 0;
        loop {
            line.clear();
            if source.read_line(&mut line)? == 0 {
                break;
            }
            line_no += 1;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            let mut tokens = trimmed.split_whitespace();
            let (idx, label, degree) = match (tokens.next(), tokens.next(), tokens.next(), tokens.next())
            {
                (Some(i), Some(l), Some(d), None) => (i, l, d),
                _ => return Err(OrderFileError::Malformed { line: line_no }),
            };
            let idx: u32 = idx
                .parse()
                .map_err(|_| OrderFileError::Malformed { line: line_no })?;
            let stated: u32 = degree
                .parse()
                .map_err(|_| OrderFileError::Malformed { line: line_no })?;
            let expected = perm.len() as u32 + 1;
            if idx != expected {
                return Err(OrderFileError::IndexMismatch { line: line_no, expected });
            }
            let node = graph.id_of(label).ok_or_else(|| OrderFileError::UnknownLabel {
                line: line_no,
                label: label.to_string(),
            })?;
            let actual = graph.degree(node) as u32;
            if stated != actual {
                return Err(OrderFileError::DegreeMismatch {
                    line: line_no,
                    label: label.to_string(),
                    stated,
                    actual,
                });
            }
            perm.push(node);
        }
        Ok(NodeOrdering::from_permutation(graph, &perm)?)
    }
}
