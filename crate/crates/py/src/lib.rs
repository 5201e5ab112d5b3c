//! Python bindings for the `netrel` reliability engine.
//!
//! Node labels are 1-based on the Python side, as in the edge-list format.
//!
//!     import netrel
//!     g = netrel.Graph.parse(open("bridge.txt").read(), p=0.9)
//!     r = netrel.all_pairs(g, workers=4)
//!     r.reliability(1, 4), r.count(1, 4)

use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;

use netrel::graph::{parse_graph, ArcProbabilities, ParseOptions};
use netrel::relia::{self, AllPairsOptions};

type Matrix = Vec<Vec<f64>>;

fn to_py(e: netrel::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn node(label: usize, n: usize) -> PyResult<usize> {
    if label == 0 || label > n {
        return Err(PyIndexError::new_err(format!(
            "node {label} outside 1..={n}"
        )));
    }
    Ok(label - 1)
}

/// An undirected binary-state network.
#[pyclass(frozen, module = "netrel")]
struct Graph {
    inner: netrel::Graph,
}

#[pymethods]
impl Graph {
    /// Build from 1-based arc pairs. Give either a common `p` or one
    /// probability per arc in `probs`.
    #[new]
    #[pyo3(signature = (n, arcs, p=None, probs=None, allow_disconnected=false))]
    fn new(
        n: usize,
        arcs: Vec<(usize, usize)>,
        p: Option<f64>,
        probs: Option<Vec<f64>>,
        allow_disconnected: bool,
    ) -> PyResult<Self> {
        let dist = match (p, probs) {
            (Some(p), None) => ArcProbabilities::Homogeneous(p),
            (None, Some(ps)) => ArcProbabilities::PerArc(ps),
            _ => return Err(PyValueError::new_err("give exactly one of p or probs")),
        };
        let mut pairs = Vec::with_capacity(arcs.len());
        for (u, v) in arcs {
            pairs.push(netrel::graph::Arc::new(node(u, n)?, node(v, n)?));
        }
        let inner =
            netrel::Graph::with_options(n, pairs, dist, !allow_disconnected).map_err(to_py)?;
        Ok(Graph { inner })
    }

    /// Parse the edge-list text format.
    #[staticmethod]
    #[pyo3(signature = (text, p=None, allow_disconnected=false))]
    fn parse(text: &str, p: Option<f64>, allow_disconnected: bool) -> PyResult<Self> {
        let inner = parse_graph(
            text,
            ParseOptions {
                p,
                allow_disconnected,
            },
        )
        .map_err(to_py)?;
        Ok(Graph { inner })
    }

    /// Random connected simple graph with a common arc probability.
    #[staticmethod]
    #[pyo3(signature = (n, m, seed, p=0.9))]
    fn random(n: usize, m: usize, seed: u64, p: f64) -> PyResult<Self> {
        let inner =
            netrel::generate::random_connected(n, m, seed, ArcProbabilities::Homogeneous(p))
                .map_err(to_py)?;
        Ok(Graph { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.node_count()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.arc_count()
    }

    #[getter]
    fn arcs(&self) -> Vec<(usize, usize)> {
        self.inner
            .arcs()
            .iter()
            .map(|a| (a.u + 1, a.v + 1))
            .collect()
    }

    /// Per-arc working probabilities.
    #[getter]
    fn probabilities(&self) -> Vec<f64> {
        (0..self.inner.arc_count())
            .map(|k| self.inner.arc_probability(k))
            .collect()
    }

    fn to_edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, m={})",
            self.inner.node_count(),
            self.inner.arc_count()
        )
    }
}

/// All-pairs reliability matrix `R` and connected-vector counts `C`.
#[pyclass(frozen, module = "netrel")]
struct Result {
    inner: relia::ReliabilityResult,
}

#[pymethods]
impl Result {
    fn reliability(&self, s: usize, t: usize) -> PyResult<f64> {
        let n = self.inner.node_count();
        Ok(self.inner.reliability(node(s, n)?, node(t, n)?))
    }

    fn count(&self, s: usize, t: usize) -> PyResult<u64> {
        let n = self.inner.node_count();
        Ok(self.inner.count(node(s, n)?, node(t, n)?))
    }

    /// Full `n x n` matrix, row/column 0 is node 1.
    #[getter]
    fn matrix(&self) -> Vec<Vec<f64>> {
        self.inner.reliability_matrix()
    }

    #[getter]
    fn counts(&self) -> Vec<Vec<u64>> {
        self.inner.count_matrix()
    }

    #[getter]
    fn vectors_visited(&self) -> u64 {
        self.inner.vectors_visited
    }

    #[getter]
    fn total_probability(&self) -> f64 {
        self.inner.total_probability
    }

    /// Mean connected-vector count over unordered pairs as `(numer, denom)`.
    fn average_connected_count(&self) -> (u128, u128) {
        let r = relia::average_connected_count(&self.inner);
        (*r.numer(), *r.denom())
    }

    fn max_abs_diff(&self, other: &Result) -> f64 {
        self.inner.max_abs_diff(&other.inner)
    }

    fn to_csv(&self, counts: bool) -> String {
        use netrel::cli::{emit_counts, emit_matrix, OutputFormat};
        if counts {
            emit_counts(&self.inner, OutputFormat::Csv)
        } else {
            emit_matrix(&self.inner, OutputFormat::Csv)
        }
    }
}

#[pyfunction]
#[pyo3(signature = (graph, workers=1, force=false))]
fn all_pairs(py: Python<'_>, graph: &Graph, workers: usize, force: bool) -> PyResult<Result> {
    let g = &graph.inner;
    let inner = py
        .detach(|| relia::all_pairs(g, AllPairsOptions { workers, force }))
        .map_err(to_py)?;
    Ok(Result { inner })
}

#[pyfunction]
fn oracle_all_pairs(graph: &Graph) -> PyResult<Result> {
    let inner = netrel::oracle::oracle_all_pairs(&graph.inner).map_err(to_py)?;
    Ok(Result { inner })
}

/// Baseline single-pair reliability through the directed expansion.
#[pyfunction]
fn single_pair_traditional(graph: &Graph, s: usize, t: usize) -> PyResult<f64> {
    let n = graph.inner.node_count();
    relia::single_pair_traditional(&graph.inner, node(s, n)?, node(t, n)?).map_err(to_py)
}

/// Returns `(mean, stderr)` matrices.
#[pyfunction]
fn monte_carlo(graph: &Graph, samples: u64, seed: u64) -> PyResult<(Matrix, Matrix)> {
    let est = netrel::oracle::monte_carlo(&graph.inner, samples, seed).map_err(to_py)?;
    Ok((est.mean, est.stderr))
}

/// `[P(0), ..., P(m)]` with `P(i) = p^i (1-p)^(m-i)`.
#[pyfunction]
fn p_table(p: f64, m: usize) -> PyResult<Vec<f64>> {
    Ok(relia::precompute_p_table(p, m)
        .map_err(to_py)?
        .values()
        .to_vec())
}

#[pymodule]
#[pyo3(name = "netrel")]
fn netrel_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_class::<Result>()?;
    m.add_function(wrap_pyfunction!(all_pairs, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_all_pairs, m)?)?;
    m.add_function(wrap_pyfunction!(single_pair_traditional, m)?)?;
    m.add_function(wrap_pyfunction!(monte_carlo, m)?)?;
    m.add_function(wrap_pyfunction!(p_table, m)?)?;
    Ok(())
}
