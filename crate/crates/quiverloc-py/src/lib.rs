//! Python bindings: the main structures (locality sets, quivers, paths,
//! partial semigroups, algebra elements) and the constructions relating
//! them, importable as `quiverloc_py`.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use quiverloc as core;
use quiverloc::Coefficient;

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "LocalitySet", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyLocalitySet {
    inner: core::LocalitySet,
}

#[pymethods]
impl PyLocalitySet {
    #[new]
    fn new(elements: Vec<String>, pairs: Vec<(String, String)>) -> PyResult<Self> {
        Ok(PyLocalitySet {
            inner: core::LocalitySet::new(elements, pairs).map_err(err)?,
        })
    }

    #[getter]
    fn elements(&self) -> Vec<String> {
        self.inner.elements().to_vec()
    }

    #[getter]
    fn pairs(&self) -> Vec<(String, String)> {
        self.inner.relation().iter().cloned().collect()
    }

    fn related(&self, a: &str, b: &str) -> bool {
        self.inner.related(a, b)
    }

    fn is_regular(&self) -> bool {
        self.inner.is_regular()
    }

    fn regularity_witness(&self) -> Option<(String, String, String, String)> {
        self.inner
            .regularity_witness()
            .map(|[a, d1, c1, b]| (a, d1, c1, b))
    }

    fn to_text(&self) -> PyResult<String> {
        core::serialize_document(&core::Document::LocalitySet(self.inner.clone())).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "LocalitySet(elements={:?}, pairs={:?})",
            self.inner.elements(),
            self.pairs()
        )
    }
}

#[pyclass(name = "Quiver", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyQuiver {
    inner: core::Quiver,
}

#[pymethods]
impl PyQuiver {
    #[new]
    fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> PyResult<Self> {
        Ok(PyQuiver {
            inner: core::Quiver::new(vertices, arrows).map_err(err)?,
        })
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().to_vec()
    }

    #[getter]
    fn arrows(&self) -> Vec<(String, String, String)> {
        self.inner
            .arrows()
            .iter()
            .map(|a| (a.label.clone(), a.source.clone(), a.target.clone()))
            .collect()
    }

    fn is_full(&self) -> bool {
        self.inner.is_full()
    }

    fn is_full_via_fibers(&self) -> bool {
        self.inner.is_full_via_fibers()
    }

    fn to_text(&self) -> PyResult<String> {
        core::serialize_document(&core::Document::Quiver(self.inner.clone())).map_err(err)
    }

    fn to_dot(&self) -> String {
        core::emit_dot(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Quiver(vertices={:?}, arrows={:?})",
            self.inner.vertices(),
            self.arrows()
        )
    }
}

#[pyclass(name = "Path", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPath {
    inner: core::Path,
}

#[pymethods]
impl PyPath {
    #[getter]
    fn arrows(&self) -> Vec<String> {
        self.inner.arrows().to_vec()
    }

    #[getter]
    fn source(&self) -> String {
        self.inner.source().clone()
    }

    #[getter]
    fn target(&self) -> String {
        self.inner.target().clone()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Path({:?})", self.inner.arrows())
    }
}

#[pyclass(name = "PartialSemigroup", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPartialSemigroup {
    inner: core::FinitePartialSemigroup,
}

#[pymethods]
impl PyPartialSemigroup {
    /// Builds a partial semigroup from its carrier and product table; the
    /// locality relation is exactly the set of table keys.
    #[new]
    fn new(carrier: Vec<String>, table: BTreeMap<(String, String), String>) -> PyResult<Self> {
        let relation: Vec<(String, String)> = table.keys().cloned().collect();
        Ok(PyPartialSemigroup {
            inner: core::FinitePartialSemigroup::new(carrier, relation, table).map_err(err)?,
        })
    }

    #[getter]
    fn carrier(&self) -> Vec<String> {
        self.inner.carrier().to_vec()
    }

    #[getter]
    fn table(&self) -> BTreeMap<(String, String), String> {
        self.inner.table().clone()
    }

    fn related(&self, a: &str, b: &str) -> bool {
        self.inner.related(a, b)
    }

    fn product(&self, a: &str, b: &str) -> Option<String> {
        self.inner.product(a, b).cloned()
    }

    fn check_fine(&self) -> bool {
        self.inner.check_fine()
    }

    fn to_text(&self) -> PyResult<String> {
        core::serialize_document(&core::Document::PartialSemigroup(self.inner.clone()))
            .map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("PartialSemigroup(carrier={:?})", self.inner.carrier())
    }
}

#[pyclass(name = "AlgebraElement", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyAlgebraElement {
    inner: core::AlgebraElement,
}

fn coefficient(numerator: i64, denominator: i64) -> PyResult<Coefficient> {
    if denominator == 0 {
        return Err(PyValueError::new_err("denominator must be nonzero"));
    }
    Ok(Coefficient::new(numerator.into(), denominator.into()))
}

#[pymethods]
impl PyAlgebraElement {
    fn add(&self, other: &PyAlgebraElement) -> PyResult<Self> {
        Ok(PyAlgebraElement {
            inner: self.inner.add(&other.inner).map_err(err)?,
        })
    }

    fn mul(&self, other: &PyAlgebraElement) -> PyResult<Self> {
        Ok(PyAlgebraElement {
            inner: self.inner.mul(&other.inner).map_err(err)?,
        })
    }

    fn scale(&self, numerator: i64, denominator: i64) -> PyResult<Self> {
        Ok(PyAlgebraElement {
            inner: self.inner.scale(&coefficient(numerator, denominator)?),
        })
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Terms as `(arrow_labels, coefficient_string)` pairs, shortest
    /// paths first.
    #[getter]
    fn terms(&self) -> Vec<(Vec<String>, String)> {
        self.inner
            .terms()
            .iter()
            .map(|(p, c)| (p.arrows().to_vec(), c.to_string()))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("AlgebraElement(terms={:?})", self.terms())
    }
}

#[pyfunction]
fn locality_of_quiver(q: &PyQuiver) -> PyLocalitySet {
    PyLocalitySet {
        inner: core::locality_of_quiver(&q.inner),
    }
}

#[pyfunction]
fn quiver_of_locality(x: &PyLocalitySet) -> PyQuiver {
    PyQuiver {
        inner: core::quiver_of_locality(&x.inner),
    }
}

#[pyfunction]
fn regular_hull(x: &PyLocalitySet) -> PyLocalitySet {
    PyLocalitySet {
        inner: core::regular_hull(&x.inner),
    }
}

/// Returns `(cover, vertex_map, arrow_map)`; the arrow map is the
/// identity on labels.
#[pyfunction]
fn full_cover(
    q: &PyQuiver,
) -> (PyQuiver, BTreeMap<String, String>, BTreeMap<String, String>) {
    let result = core::full_cover(&q.inner);
    (
        PyQuiver {
            inner: result.cover,
        },
        result.projection.vertex_map().clone(),
        result.projection.arrow_map().clone(),
    )
}

/// The forced vertex bijection making identity-on-arrows a quiver
/// isomorphism, if it exists.
#[pyfunction]
fn canonical_iso(
    q: &PyQuiver,
    q2: &PyQuiver,
) -> PyResult<Option<BTreeMap<String, String>>> {
    Ok(core::canonical_iso(&q.inner, &q2.inner)
        .map_err(err)?
        .map(|hom| hom.vertex_map().clone()))
}

#[pyfunction]
fn make_path(q: &PyQuiver, arrows: Vec<String>) -> PyResult<PyPath> {
    Ok(PyPath {
        inner: core::Path::new(&q.inner, arrows).map_err(err)?,
    })
}

#[pyfunction]
fn composable(p: &PyPath, q: &PyPath) -> PyResult<bool> {
    p.inner.composable(&q.inner).map_err(err)
}

#[pyfunction]
fn compose(p: &PyPath, q: &PyPath) -> PyResult<PyPath> {
    Ok(PyPath {
        inner: p.inner.compose(&q.inner).map_err(err)?,
    })
}

#[pyfunction]
fn enumerate_paths(q: &PyQuiver, max_len: usize) -> Vec<PyPath> {
    core::enumerate_paths(&q.inner, max_len)
        .into_iter()
        .map(|inner| PyPath { inner })
        .collect()
}

#[pyfunction]
fn check_path_semigroup_fine(q: &PyQuiver, max_len: usize) -> bool {
    core::check_path_semigroup_fine(&q.inner, max_len)
}

#[pyfunction]
fn monomial(q: &PyQuiver, arrows: Vec<String>, numerator: i64, denominator: i64) -> PyResult<PyAlgebraElement> {
    let path = core::Path::new(&q.inner, arrows).map_err(err)?;
    Ok(PyAlgebraElement {
        inner: core::AlgebraElement::monomial(path, coefficient(numerator, denominator)?),
    })
}

#[pyfunction]
fn algebra_zero(q: &PyQuiver) -> PyAlgebraElement {
    PyAlgebraElement {
        inner: core::AlgebraElement::zero(&q.inner),
    }
}

fn witness(
    x: &PyLocalitySet,
    s: &PyPartialSemigroup,
    mapping: BTreeMap<String, String>,
) -> PyResult<core::LocalityMapWitness> {
    core::LocalityMapWitness::new(x.inner.clone(), s.inner.to_locality_set(), mapping)
        .map_err(err)
}

/// Extends `mapping` multiplicatively to a path (given by its arrow
/// labels) of the quiver of `x`, landing in `s`.
#[pyfunction]
fn free_extension(
    x: &PyLocalitySet,
    s: &PyPartialSemigroup,
    mapping: BTreeMap<String, String>,
    arrows: Vec<String>,
) -> PyResult<String> {
    let f = witness(x, s, mapping)?;
    let quiver = core::quiver_of_locality(&x.inner);
    let path = core::Path::new(&quiver, arrows).map_err(err)?;
    core::free_extension(&f, &s.inner, &path).map_err(err)
}

/// Checks multiplicativity and uniqueness of the extension on all paths
/// up to `max_len`; returns `(holds, first_violation)`.
#[pyfunction]
fn verify_freeness(
    x: &PyLocalitySet,
    s: &PyPartialSemigroup,
    mapping: BTreeMap<String, String>,
    max_len: usize,
) -> PyResult<(bool, Option<String>)> {
    let f = witness(x, s, mapping)?;
    let report = core::verify_freeness(&x.inner, &s.inner, &f, max_len).map_err(err)?;
    Ok((report.holds(), report.first_violation))
}

/// Exhaustive round-trip verification; returns
/// `(holds, locality_sets_scanned, quivers_scanned, counterexample)`.
#[pyfunction]
fn verify_roundtrips(max_elems: usize) -> PyResult<(bool, u64, u64, Option<String>)> {
    let report = core::verify_roundtrips(max_elems).map_err(err)?;
    let counterexample = report
        .counterexample
        .as_ref()
        .map(|cx| format!("[{:?}] {}", cx.property, cx.witness));
    Ok((
        report.holds(),
        report.total_locality_sets(),
        report.quivers_scanned,
        counterexample,
    ))
}

/// Parses a document and returns the matching class instance.
#[pyfunction]
fn parse_document(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    match core::parse_document(text).map_err(err)? {
        core::Document::LocalitySet(inner) => {
            Ok(Py::new(py, PyLocalitySet { inner })?.into_any())
        }
        core::Document::Quiver(inner) => Ok(Py::new(py, PyQuiver { inner })?.into_any()),
        core::Document::PartialSemigroup(inner) => {
            Ok(Py::new(py, PyPartialSemigroup { inner })?.into_any())
        }
    }
}

#[pymodule]
fn quiverloc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLocalitySet>()?;
    m.add_class::<PyQuiver>()?;
    m.add_class::<PyPath>()?;
    m.add_class::<PyPartialSemigroup>()?;
    m.add_class::<PyAlgebraElement>()?;
    m.add_function(wrap_pyfunction!(locality_of_quiver, m)?)?;
    m.add_function(wrap_pyfunction!(quiver_of_locality, m)?)?;
    m.add_function(wrap_pyfunction!(regular_hull, m)?)?;
    m.add_function(wrap_pyfunction!(full_cover, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_iso, m)?)?;
    m.add_function(wrap_pyfunction!(make_path, m)?)?;
    m.add_function(wrap_pyfunction!(composable, m)?)?;
    m.add_function(wrap_pyfunction!(compose, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_paths, m)?)?;
    m.add_function(wrap_pyfunction!(check_path_semigroup_fine, m)?)?;
    m.add_function(wrap_pyfunction!(monomial, m)?)?;
    m.add_function(wrap_pyfunction!(algebra_zero, m)?)?;
    m.add_function(wrap_pyfunction!(free_extension, m)?)?;
    m.add_function(wrap_pyfunction!(verify_freeness, m)?)?;
    m.add_function(wrap_pyfunction!(verify_roundtrips, m)?)?;
    m.add_function(wrap_pyfunction!(parse_document, m)?)?;
    Ok(())
}
