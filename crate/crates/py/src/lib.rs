use std::collections::BTreeMap;

use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;

use spbcast::graph::is_biconnected;
use spbcast::io::{graph_from_json, graph_to_dot, graph_to_json, schedule_from_csv, schedule_to_csv};
use spbcast::schemes::SchemeKind;
use spbcast::verify::{planarity_check, verify_family_claims, verify_graph, CheckSet, GraphCheckOptions};
use spbcast::{solver, Error, Family, FamilySpec, Graph, LabeledGraph, Role};

fn err(e: Error) -> PyErr {
    match e {
        Error::Capability(m) => PyOverflowError::new_err(m),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn role(name: &str) -> PyResult<Role> {
    [Role::S, Role::T, Role::SPrime, Role::TPrime]
        .into_iter()
        .find(|r| r.name() == name)
        .ok_or_else(|| PyValueError::new_err(format!("unknown role '{name}'")))
}

/// Undirected graph with optional terminal roles.
#[pyclass(name = "Graph", module = "spbcast_py", frozen)]
struct PyGraph(LabeledGraph);

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges, roles = None))]
    fn new(n: usize, edges: Vec<(usize, usize)>, roles: Option<BTreeMap<String, usize>>) -> PyResult<Self> {
        let mut lg = LabeledGraph::plain(Graph::new(n, &edges).map_err(err)?);
        for (name, v) in roles.unwrap_or_default() {
            lg.roles.insert(role(&name)?, v);
        }
        lg.check().map_err(err)?;
        Ok(PyGraph(lg))
    }

    /// Builds a family instance: bt, mb, b, eb, rb, ab, pb, k3sp.
    #[staticmethod]
    #[pyo3(signature = (family, k, n = None, seed = None))]
    fn family(family: &str, k: u32, n: Option<usize>, seed: Option<u64>) -> PyResult<Self> {
        let mut spec = FamilySpec::new(family.parse::<Family>().map_err(err)?, k);
        spec.n = n;
        spec.seed = seed;
        spec.build().map(PyGraph).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        graph_from_json(text).map(PyGraph).map_err(err)
    }

    fn to_json(&self) -> String {
        graph_to_json(&self.0)
    }

    fn to_dot(&self) -> String {
        graph_to_dot(&self.0)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.graph.edges().to_vec()
    }

    #[getter]
    fn roles(&self) -> BTreeMap<&'static str, usize> {
        self.0.roles.iter().map(|(r, &v)| (r.name(), v)).collect()
    }

    /// Two-terminal SP test; defaults to the graph's own s and t.
    #[pyo3(signature = (s = None, t = None))]
    fn is_sp(&self, s: Option<usize>, t: Option<usize>) -> PyResult<bool> {
        let s = s.or(self.0.role(Role::S)).ok_or_else(|| PyValueError::new_err("no terminal s"))?;
        let t = t.or(self.0.role(Role::T)).ok_or_else(|| PyValueError::new_err("no terminal t"))?;
        Ok(spbcast::verify::is_sp(&self.0.graph, s, t).map_err(err)?.is_sp)
    }

    fn is_planar(&self) -> bool {
        planarity_check(&self.0.graph).is_ok()
    }

    fn is_biconnected(&self) -> PyResult<bool> {
        is_biconnected(&self.0.graph).map_err(err)
    }

    /// Schedule of a named scheme (binomial, mb, composed, ab, relaxed, greedy).
    fn schedule(&self, scheme: &str, origin: usize) -> PyResult<PySchedule> {
        let kind: SchemeKind = scheme.parse().map_err(err)?;
        kind.run(&self.0, origin).map(PySchedule).map_err(err)
    }

    /// Rounds taken by `schedule`; raises ValueError on any violation.
    fn validate(&self, schedule: &PySchedule) -> PyResult<usize> {
        spbcast::validate_schedule(&self.0.graph, &schedule.0).map_err(|v| PyValueError::new_err(v.to_string()))
    }

    /// Optimal rounds from `origin` and a witness schedule.
    #[pyo3(signature = (origin, cap = solver::DEFAULT_CAP))]
    fn exact_broadcast_time(&self, py: Python<'_>, origin: usize, cap: usize) -> PyResult<(usize, PySchedule)> {
        let g = &self.0.graph;
        let (r, s) = py.detach(|| solver::exact_broadcast_time(g, origin, cap)).map_err(err)?;
        Ok((r, PySchedule(s)))
    }

    /// (broadcast time, worst originator).
    #[pyo3(signature = (cap = solver::DEFAULT_CAP))]
    fn broadcast_time(&self, py: Python<'_>, cap: usize) -> PyResult<(usize, usize)> {
        let g = &self.0.graph;
        py.detach(|| solver::broadcast_time(g, cap)).map_err(err)
    }

    /// Check reports as JSON strings.
    #[pyo3(signature = (checks = "sp,planar,biconnected,degrees,distances,scheme,exact", terminals = None, try_all_pairs = false, cap = solver::DEFAULT_CAP))]
    fn verify(
        &self,
        py: Python<'_>,
        checks: &str,
        terminals: Option<(usize, usize)>,
        try_all_pairs: bool,
        cap: usize,
    ) -> PyResult<Vec<String>> {
        let checks = CheckSet::parse(checks).map_err(err)?;
        let g = &self.0;
        let reports =
            py.detach(|| verify_graph(g, &checks, GraphCheckOptions { terminals, try_all_pairs, cap })).map_err(err)?;
        Ok(reports.iter().map(|r| r.to_string()).collect())
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.0.n(), self.0.graph.edge_count())
    }
}

/// Round-by-round call list.
#[pyclass(name = "Schedule", module = "spbcast_py", frozen)]
struct PySchedule(spbcast::Schedule);

#[pymethods]
impl PySchedule {
    #[staticmethod]
    #[pyo3(signature = (text, origin = None))]
    fn from_csv(text: &str, origin: Option<usize>) -> PyResult<Self> {
        schedule_from_csv(text, origin).map(PySchedule).map_err(err)
    }

    fn to_csv(&self) -> String {
        schedule_to_csv(&self.0)
    }

    #[getter]
    fn origin(&self) -> usize {
        self.0.origin
    }

    /// One list of (caller, callee) pairs per round.
    #[getter]
    fn rounds(&self) -> Vec<Vec<(usize, usize)>> {
        self.0.rounds.iter().map(|r| r.iter().map(|c| (c.caller, c.callee)).collect()).collect()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

/// Family claims for k in lo..=hi, as JSON report strings.
#[pyfunction]
#[pyo3(signature = (family, lo, hi, checks = "sp,planar,biconnected,degrees,distances,scheme,exact", cap = solver::DEFAULT_CAP))]
fn verify_family(py: Python<'_>, family: &str, lo: u32, hi: u32, checks: &str, cap: usize) -> PyResult<Vec<String>> {
    let family: Family = family.parse().map_err(err)?;
    let checks = CheckSet::parse(checks).map_err(err)?;
    let specs: Vec<FamilySpec> = (lo..=hi).map(|k| FamilySpec::new(family, k)).collect();
    let reports = py.detach(|| verify_family_claims(&specs, &checks, cap));
    Ok(reports.iter().map(|r| r.to_string()).collect())
}

#[pymodule]
fn spbcast_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PySchedule>()?;
    m.add_function(wrap_pyfunction!(verify_family, m)?)?;
    m.add("DEFAULT_CAP", solver::DEFAULT_CAP)?;
    Ok(())
}
