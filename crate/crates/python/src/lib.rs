//! Python bindings: trees, dendriform elements, noncrossing plants and the
//! verification suites.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;
use pyo3::pyclass::CompareOp;

use dendcat::anticyclic::{apply_tau, apply_theta, apply_theta_inv, diese};
use dendcat::categorify::{build_m, check_relations, ProductKind};
use dendcat::noncrossing::{compose_ncp, ncp_to_dend, simple_nct, star_ncp, NcPlant};
use dendcat::projective::projective_element;
use dendcat::tamari::{lower_covers, upper_covers, PosetView};
use dendcat::{compose, enumerate_ncp, enumerate_nct, enumerate_trees, over_elem, star, under_elem, verify};
use dendcat::{DendElem, Error};

fn err(e: Error) -> PyErr {
    match e {
        Error::IndexOutOfRange { .. } => PyIndexError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn hash_of(v: &impl Hash) -> u64 {
    let mut h = DefaultHasher::new();
    v.hash(&mut h);
    h.finish()
}

/// A planar binary tree, written `o` for the leaf and `(L R)` for a node.
#[pyclass(name = "Tree", frozen, eq, ord, from_py_object)]
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct PyTree(dendcat::Tree);

#[pymethods]
impl PyTree {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyTree).map_err(err)
    }

    #[staticmethod]
    fn enumerate(n: usize) -> PyResult<Vec<PyTree>> {
        Ok(enumerate_trees(n).map_err(err)?.into_iter().map(PyTree).collect())
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn over(&self, other: &PyTree) -> PyTree {
        PyTree(self.0.over(&other.0))
    }

    fn under(&self, other: &PyTree) -> PyTree {
        PyTree(self.0.under(&other.0))
    }

    fn reverse(&self) -> PyTree {
        PyTree(self.0.reverse())
    }

    fn upper_covers(&self) -> Vec<PyTree> {
        upper_covers(&self.0).into_iter().map(PyTree).collect()
    }

    fn lower_covers(&self) -> Vec<PyTree> {
        lower_covers(&self.0).into_iter().map(PyTree).collect()
    }

    /// Tamari order `self <= other`.
    fn leq(&self, other: &PyTree) -> PyResult<bool> {
        let view = PosetView::shared(self.0.degree()).map_err(err)?;
        view.leq(&self.0, &other.0).map_err(err)
    }

    /// The sum of all trees below this one.
    fn projective(&self) -> PyResult<Element> {
        Ok(Element(projective_element(&self.0).map_err(err)?.elem))
    }

    fn simple_nct(&self) -> PyResult<Plant> {
        simple_nct(&self.0).map(Plant).map_err(err)
    }

    fn __hash__(&self) -> u64 {
        hash_of(&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Tree('{}')", self.0)
    }
}

/// An integer combination of trees of one degree.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Element(DendElem);

#[pymethods]
impl Element {
    /// `Element(tree)` for a basis element, or `Element(degree, [(tree, coeff), ...])`.
    #[new]
    #[pyo3(signature = (tree_or_degree, terms=None))]
    fn new(tree_or_degree: &Bound<'_, PyAny>, terms: Option<Vec<(PyTree, i64)>>) -> PyResult<Self> {
        if let Ok(degree) = tree_or_degree.extract::<usize>() {
            let terms = terms.unwrap_or_default().into_iter().map(|(t, c)| (t.0, c));
            return DendElem::from_terms(degree, terms).map(Element).map_err(err);
        }
        let tree = match tree_or_degree.extract::<PyTree>() {
            Ok(t) => t.0,
            Err(_) => tree_or_degree.extract::<String>()?.parse().map_err(err)?,
        };
        if tree.is_leaf() {
            return Err(PyValueError::new_err("the leaf is not an element"));
        }
        Ok(Element(DendElem::basis(tree)))
    }

    #[staticmethod]
    fn sum_all(n: usize) -> PyResult<Element> {
        DendElem::sum_all(n).map(Element).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Element> {
        serde_json::from_str(text)
            .map(Element)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("element serializes")
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn terms(&self) -> Vec<(PyTree, i64)> {
        self.0.terms().map(|(t, c)| (PyTree(t.clone()), c)).collect()
    }

    fn coeff(&self, tree: &PyTree) -> i64 {
        self.0.coeff(&tree.0)
    }

    fn compose(&self, i: usize, other: &Element) -> PyResult<Element> {
        compose(&self.0, i, &other.0).map(Element).map_err(err)
    }

    fn star(&self, other: &Element) -> PyResult<Element> {
        star(&self.0, &other.0).map(Element).map_err(err)
    }

    fn diese(&self, other: &Element) -> PyResult<Element> {
        diese(&self.0, &other.0).map(Element).map_err(err)
    }

    fn over(&self, other: &Element) -> PyResult<Element> {
        over_elem(&self.0, &other.0).map(Element).map_err(err)
    }

    fn under(&self, other: &Element) -> PyResult<Element> {
        under_elem(&self.0, &other.0).map(Element).map_err(err)
    }

    fn theta(&self) -> PyResult<Element> {
        apply_theta(&self.0).map(Element).map_err(err)
    }

    fn theta_inv(&self) -> PyResult<Element> {
        apply_theta_inv(&self.0).map(Element).map_err(err)
    }

    fn tau(&self) -> PyResult<Element> {
        apply_tau(&self.0).map(Element).map_err(err)
    }

    fn reverse(&self) -> Element {
        Element(self.0.reverse())
    }

    fn euler_form(&self, other: &Element) -> PyResult<i64> {
        dendcat::tamari::euler_form(&self.0, &other.0).map_err(err)
    }

    fn __add__(&self, other: &Element) -> PyResult<Element> {
        self.0.try_add(&other.0).map(Element).map_err(err)
    }

    fn __sub__(&self, other: &Element) -> PyResult<Element> {
        self.0.try_sub(&other.0).map(Element).map_err(err)
    }

    fn __neg__(&self) -> Element {
        Element(self.0.scale(-1))
    }

    fn __mul__(&self, k: i64) -> Element {
        Element(self.0.scale(k))
    }

    fn __rmul__(&self, k: i64) -> Element {
        Element(self.0.scale(k))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __richcmp__(&self, other: &Element, op: CompareOp) -> PyResult<bool> {
        match op {
            CompareOp::Eq => Ok(self.0 == other.0),
            CompareOp::Ne => Ok(self.0 != other.0),
            _ => Err(pyo3::exceptions::PyTypeError::new_err("elements are not ordered")),
        }
    }

    fn __hash__(&self) -> u64 {
        hash_of(&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element({})", self.0)
    }
}

/// A noncrossing plant on the polygon with corners `0..=n`.
#[pyclass(frozen, eq, ord, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Plant(NcPlant);

#[pymethods]
impl Plant {
    #[new]
    #[pyo3(signature = (n, edges, numerators=Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>, numerators: Vec<(usize, usize)>) -> PyResult<Self> {
        NcPlant::new(n, edges, numerators).map(Plant).map_err(err)
    }

    /// Noncrossing trees of degree `n`.
    #[staticmethod]
    fn trees(n: usize) -> PyResult<Vec<Plant>> {
        Ok(enumerate_nct(n).map_err(err)?.into_iter().map(Plant).collect())
    }

    /// All noncrossing plants of degree `n`.
    #[staticmethod]
    fn plants(n: usize) -> PyResult<Vec<Plant>> {
        Ok(enumerate_ncp(n).map_err(err)?.into_iter().map(Plant).collect())
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.den_edges()
    }

    fn numerators(&self) -> Vec<(usize, usize)> {
        self.0.num_edges()
    }

    fn is_tree(&self) -> bool {
        self.0.is_tree()
    }

    /// Counts of G, M and D angles.
    fn angle_counts(&self) -> PyResult<(usize, usize, usize)> {
        let c = self.0.angle_counts().map_err(err)?;
        Ok((c.g, c.m, c.d))
    }

    fn compose(&self, i: usize, other: &Plant) -> PyResult<Plant> {
        compose_ncp(&self.0, i, &other.0).map(Plant).map_err(err)
    }

    fn star(&self, other: &Plant) -> PyResult<Plant> {
        star_ncp(&self.0, &other.0).map(Plant).map_err(err)
    }

    fn to_element(&self) -> PyResult<Element> {
        ncp_to_dend(&self.0).map(Element).map_err(err)
    }

    fn tree_of_simple(&self) -> PyResult<PyTree> {
        self.0.tree_of_simple().map(PyTree).map_err(err)
    }

    fn __hash__(&self) -> u64 {
        hash_of(&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Plant({})", self.0)
    }
}

/// The tri-module lifting `circ1`, `star` or `diese` in degrees `(m, n)`.
#[pyclass(frozen)]
struct TriModule(dendcat::TriModule);

#[pymethods]
impl TriModule {
    #[new]
    fn new(kind: &str, m: usize, n: usize) -> PyResult<Self> {
        let kind: ProductKind = kind.parse().map_err(err)?;
        build_m(kind, m, n).map(TriModule).map_err(err)
    }

    #[getter]
    fn degrees(&self) -> (usize, usize, usize) {
        self.0.degrees()
    }

    #[getter]
    fn vertices(&self) -> usize {
        self.0.quiver().len()
    }

    fn support_size(&self) -> usize {
        self.0.support_size()
    }

    /// Runs the exact relation check; returns the number of violations.
    fn check_relations(&self) -> usize {
        check_relations(&self.0).violation_count
    }
}

/// Runs a suite (or `all`) and returns the JSON report.
#[pyfunction]
#[pyo3(name = "verify", signature = (suite="all", max_degree=4))]
fn py_verify(py: Python<'_>, suite: &str, max_degree: usize) -> PyResult<String> {
    let report = py.detach(|| -> dendcat::Result<_> {
        Ok(if suite == "all" {
            verify::run_all(max_degree)
        } else {
            verify::run_suites(&[verify::find_suite(suite)?], max_degree)
        })
    });
    let report = report.map_err(err)?;
    Ok(serde_json::to_string(&report).expect("report serializes"))
}

#[pyfunction]
#[pyo3(name = "catalan")]
fn py_catalan(n: usize) -> u64 {
    dendcat::catalan(n)
}

#[pymodule]
#[pyo3(name = "dendcat")]
fn dendcat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTree>()?;
    m.add_class::<Element>()?;
    m.add_class::<Plant>()?;
    m.add_class::<TriModule>()?;
    m.add_function(wrap_pyfunction!(py_catalan, m)?)?;
    m.add_function(wrap_pyfunction!(py_verify, m)?)?;
    Ok(())
}
