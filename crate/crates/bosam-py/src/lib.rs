//! Python bindings: graphs, orderings, bitmaps, generators, and metrics
//! exposed as the `bosam_py` extension module. All wrappers are read-only
//! views over the underlying Rust values; errors surface as ValueError
//! (domain) or OSError (I/O).

use bosam::graph::Graph;
use bosam::metrics::{MetricsReport, ReportOptions};
use bosam::models;
use bosam::ordering::{self, NodeOrdering, OrderingMode};
use bosam::render;
use pyo3::exceptions::{PyIndexError, PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyBytes;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_mode(mode: &str) -> PyResult<OrderingMode> {
    match mode {
        "cohesion" => Ok(OrderingMode::Cohesion),
        "radiation" => Ok(OrderingMode::Radiation),
        other => Err(PyValueError::new_err(format!(
            "mode must be \"cohesion\" or \"radiation\" (got {other:?})"
        ))),
    }
}

/// Immutable simple undirected graph with dense internal ids.
#[pyclass(frozen, name = "Graph")]
struct PyGraph {
    inner: Graph,
}

impl PyGraph {
    fn check(&self, node: u32) -> PyResult<()> {
        if (node as usize) < self.inner.node_count() {
            Ok(())
        } else {
            Err(PyIndexError::new_err(format!(
                "node {node} out of range (node count {})",
                self.inner.node_count()
            )))
        }
    }
}

#[pymethods]
impl PyGraph {
    /// Parse edge-list text (two labels per line, `#` comments allowed).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: Graph::parse_str(text).map_err(value_err)? })
    }

    /// Parse an edge-list file.
    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let file = std::fs::File::open(path).map_err(|e| PyOSError::new_err(e.to_string()))?;
        let (inner, _) =
            Graph::parse_edge_list(std::io::BufReader::new(file)).map_err(value_err)?;
        Ok(PyGraph { inner })
    }

    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    fn link_count(&self) -> usize {
        self.inner.link_count()
    }

    fn degree(&self, node: u32) -> PyResult<usize> {
        self.check(node)?;
        Ok(self.inner.degree(node))
    }

    fn neighbors(&self, node: u32) -> PyResult<Vec<u32>> {
        self.check(node)?;
        Ok(self.inner.neighbors(node).to_vec())
    }

    fn label(&self, node: u32) -> PyResult<String> {
        self.check(node)?;
        Ok(self.inner.label(node).to_string())
    }

    fn id_of(&self, label: &str) -> Option<u32> {
        self.inner.id_of(label)
    }

    /// Canonical edge-list text that reparses to identical internal ids.
    fn edge_list_text(&self) -> String {
        self.inner.to_edge_list_string()
    }

    fn __len__(&self) -> usize {
        self.inner.node_count()
    }

    fn __repr__(&self) -> String {
        format!("Graph({} nodes, {} links)", self.inner.node_count(), self.inner.link_count())
    }
}

/// Degree-sorted node ordering with 1-based positions.
#[pyclass(frozen, name = "Ordering")]
struct PyOrdering {
    inner: NodeOrdering,
}

#[pymethods]
impl PyOrdering {
    /// 1-based sorted position of a node id.
    fn position_of(&self, node: u32) -> PyResult<u32> {
        if (node as usize) < self.inner.len() {
            Ok(self.inner.position_of(node))
        } else {
            Err(PyIndexError::new_err(format!("node {node} out of range")))
        }
    }

    /// Node id at a 1-based sorted position.
    fn node_at(&self, index: u32) -> PyResult<u32> {
        if index >= 1 && (index as usize) <= self.inner.len() {
            Ok(self.inner.node_at(index))
        } else {
            Err(PyIndexError::new_err(format!("sorted index {index} out of range")))
        }
    }

    /// All node ids in sorted order.
    fn to_list(&self) -> Vec<u32> {
        self.inner.as_slice().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Ordering({} nodes)", self.inner.len())
    }
}

/// Monochrome raster of a sorted adjacency matrix.
#[pyclass(frozen, name = "Bitmap")]
struct PyBitmap {
    inner: render::Bitmap,
}

#[pymethods]
impl PyBitmap {
    fn width(&self) -> u32 {
        self.inner.width()
    }

    fn height(&self) -> u32 {
        self.inner.height()
    }

    /// True iff pixel (x, y) is black.
    fn get(&self, x: u32, y: u32) -> PyResult<bool> {
        if x < self.inner.width() && y < self.inner.height() {
            Ok(self.inner.get(x, y))
        } else {
            Err(PyIndexError::new_err(format!("pixel ({x}, {y}) out of range")))
        }
    }

    fn count_black(&self) -> u64 {
        self.inner.count_black()
    }

    /// Binary PBM bytes (`P4` header plus packed raster).
    fn to_pbm<'py>(&self, py: Python<'py>) -> Bound<'py, PyBytes> {
        PyBytes::new(py, &render::encode_pbm(&self.inner))
    }

    fn __repr__(&self) -> String {
        format!("Bitmap({}x{})", self.inner.width(), self.inner.height())
    }
}

/// Uniform random graph with exact node and link counts.
#[pyfunction]
fn generate_er(nodes: usize, links: usize, seed: u64) -> PyResult<PyGraph> {
    Ok(PyGraph { inner: models::generate_er(nodes, links, seed).map_err(value_err)? })
}

/// Preferential-attachment scale-free graph (complete 7-node seed).
#[pyfunction]
#[pyo3(signature = (nodes, links, links_per_node = 3, seed = 0))]
fn generate_ba(nodes: usize, links: usize, links_per_node: u32, seed: u64) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: models::generate_ba(nodes, links, links_per_node, seed).map_err(value_err)?,
    })
}

/// Positive-feedback preference graph with exact node and link counts.
#[pyfunction]
#[pyo3(signature = (nodes, links, seed = 0, p = 0.3, q = 0.1, delta = 0.048))]
fn generate_pfp(
    nodes: usize,
    links: usize,
    seed: u64,
    p: f64,
    q: f64,
    delta: f64,
) -> PyResult<PyGraph> {
    let params = models::PfpParams { p, q, delta };
    Ok(PyGraph { inner: models::generate_pfp(nodes, links, &params, seed).map_err(value_err)? })
}

/// Sort nodes by decreasing degree with the given tie-break mode.
#[pyfunction]
#[pyo3(signature = (graph, mode = "cohesion"))]
fn order(graph: &PyGraph, mode: &str) -> PyResult<PyOrdering> {
    Ok(PyOrdering { inner: ordering::bosam_order(&graph.inner, parse_mode(mode)?) })
}

/// Render the sorted adjacency matrix onto a size×size bitmap.
#[pyfunction]
#[pyo3(signature = (graph, ordering, size = 1024, zoom = 1))]
fn rasterize(graph: &PyGraph, ordering: &PyOrdering, size: u32, zoom: u32) -> PyResult<PyBitmap> {
    Ok(PyBitmap {
        inner: render::rasterize(&graph.inner, &ordering.inner, size, zoom).map_err(value_err)?,
    })
}

/// Fraction of black pixels in the top/left border band.
#[pyfunction]
fn border_density(bitmap: &PyBitmap, fraction: f64) -> PyResult<f64> {
    render::border_density(&bitmap.inner, fraction).map_err(value_err)
}

/// Full topology report as a pretty-printed JSON string.
#[pyfunction]
#[pyo3(signature = (graph, kmin = 5, ranks = None, sample_sources = 1000, seed = 0))]
fn metrics_json(
    graph: &PyGraph,
    kmin: u32,
    ranks: Option<Vec<u32>>,
    sample_sources: usize,
    seed: u64,
) -> PyResult<String> {
    let options = ReportOptions { kmin, ranks, sample_sources, seed, ..ReportOptions::default() };
    let report = MetricsReport::compute(&graph.inner, &options).map_err(value_err)?;
    Ok(report.to_json_pretty())
}

#[pymodule]
fn bosam_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyOrdering>()?;
    m.add_class::<PyBitmap>()?;
    m.add_function(wrap_pyfunction!(generate_er, m)?)?;
    m.add_function(wrap_pyfunction!(generate_ba, m)?)?;
    m.add_function(wrap_pyfunction!(generate_pfp, m)?)?;
    m.add_function(wrap_pyfunction!(order, m)?)?;
    m.add_function(wrap_pyfunction!(rasterize, m)?)?;
    m.add_function(wrap_pyfunction!(border_density, m)?)?;
    m.add_function(wrap_pyfunction!(metrics_json, m)?)?;
    Ok(())
}
