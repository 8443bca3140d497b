//! Python bindings: permutations, groups built from specs, harness checks and tables.
//! Reports cross the boundary as JSON strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ::permcheck as core;
use core::graphs::{class_graph, element_graph, expanded_graph, GraphKind, Relation};
use core::harness::{self, tables, RunConfig};
use core::structure;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Permutation", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPermutation(core::Permutation);

#[pymethods]
impl PyPermutation {
    /// Parses cycle notation, e.g. `Permutation("(1,2,3)(4,5)", 6)`.
    #[new]
    fn new(cycles: &str, degree: usize) -> PyResult<Self> {
        core::Permutation::parse(cycles, degree)
            .map(PyPermutation)
            .map_err(err)
    }

    /// From 1-based images: `images[i-1]` is the image of `i`.
    #[staticmethod]
    fn from_images(images: Vec<usize>) -> PyResult<Self> {
        core::Permutation::from_images(&images)
            .map(PyPermutation)
            .map_err(err)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn order(&self) -> u64 {
        self.0.order()
    }

    fn is_even(&self) -> bool {
        self.0.is_even()
    }

    fn cycle_type(&self) -> String {
        self.0.cycle_type().to_string()
    }

    fn apply(&self, point: usize) -> PyResult<usize> {
        if point == 0 || point > self.0.degree() {
            return Err(err(format!("point {point} out of range")));
        }
        Ok(self.0.apply(point))
    }

    fn inverse(&self) -> Self {
        PyPermutation(self.0.inverse())
    }

    /// `g⁻¹ x g`.
    fn conjugate_by(&self, g: &PyPermutation) -> PyResult<Self> {
        if g.0.degree() != self.0.degree() {
            return Err(err("degree mismatch"));
        }
        Ok(PyPermutation(self.0.conjugate_by(&g.0)))
    }

    /// Applies `self` first, then `other`.
    fn __mul__(&self, other: &PyPermutation) -> PyResult<Self> {
        self.0.compose(&other.0).map(PyPermutation).map_err(err)
    }

    fn __pow__(&self, exp: i64, _modulo: Option<i64>) -> Self {
        PyPermutation(self.0.pow(exp))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation('{}', {})", self.0, self.0.degree())
    }
}

#[pyclass(name = "Group", frozen)]
struct PyGroup {
    name: String,
    group: core::PermGroup,
}

#[pymethods]
impl PyGroup {
    /// Builds a group from a spec such as `"S:4"`, `"PSL2:7"` or `"prod(A:5,C:2)"`.
    #[new]
    #[pyo3(signature = (spec, extended = false))]
    fn new(spec: &str, extended: bool) -> PyResult<Self> {
        let parsed = core::GroupSpec::parse(spec).map_err(err)?;
        let group = core::atlas::build_with(&parsed, extended).map_err(err)?;
        Ok(PyGroup {
            name: parsed.to_string(),
            group,
        })
    }

    #[staticmethod]
    fn from_generators(degree: usize, generators: Vec<String>) -> PyResult<Self> {
        let gens: Vec<&str> = generators.iter().map(String::as_str).collect();
        let group = core::PermGroup::from_cycle_strings(degree, &gens).map_err(err)?;
        Ok(PyGroup {
            name: format!("<{}>", generators.join(", ")),
            group,
        })
    }

    #[getter]
    fn name(&self) -> &str {
        &self.name
    }

    #[getter]
    fn degree(&self) -> usize {
        self.group.degree()
    }

    fn order(&self) -> u128 {
        self.group.order()
    }

    fn generators(&self) -> Vec<PyPermutation> {
        self.group
            .generators()
            .iter()
            .cloned()
            .map(PyPermutation)
            .collect()
    }

    fn __contains__(&self, p: &PyPermutation) -> bool {
        p.0.degree() == self.group.degree() && self.group.has(&p.0)
    }

    fn is_solvable(&self) -> bool {
        structure::is_solvable(&self.group)
    }

    fn is_nilpotent(&self) -> bool {
        structure::is_nilpotent(&self.group)
    }

    fn is_abelian(&self) -> bool {
        self.group.is_abelian()
    }

    #[pyo3(signature = (cap = core::DEFAULT_ENUMERATION_CAP))]
    fn radical_order(&self, cap: u128) -> PyResult<u128> {
        structure::solvable_radical(&self.group, cap)
            .map(|r| r.order())
            .map_err(err)
    }

    #[pyo3(signature = (p, cap = core::DEFAULT_ENUMERATION_CAP))]
    fn sylow_order(&self, p: u64, cap: u128) -> PyResult<u128> {
        structure::sylow_subgroup(&self.group, p, cap)
            .map(|s| s.order())
            .map_err(err)
    }

    /// Conjugacy classes as `(representative, size, element order, centralizer order)`.
    #[pyo3(signature = (cap = core::DEFAULT_ENUMERATION_CAP))]
    fn classes(&self, cap: u128) -> PyResult<Vec<(PyPermutation, usize, u64, u128)>> {
        let t = core::GroupTable::new(&self.group, cap).map_err(err)?;
        Ok(t.classes()
            .iter()
            .map(|c| {
                (
                    PyPermutation(c.representative.clone()),
                    c.size,
                    c.element_order,
                    c.centralizer_order,
                )
            })
            .collect())
    }

    /// A graph as DOT (`format="dot"`) or JSON text.
    #[pyo3(signature = (relation, kind = "element", format = "dot", cap = core::DEFAULT_ENUMERATION_CAP))]
    fn graph(&self, relation: &str, kind: &str, format: &str, cap: u128) -> PyResult<String> {
        let relation: Relation = relation.parse().map_err(err)?;
        let kind: GraphKind = kind.parse().map_err(err)?;
        let t = core::GroupTable::new(&self.group, cap).map_err(err)?;
        let g = match kind {
            GraphKind::Element => element_graph(&t, relation),
            GraphKind::Class => class_graph(&t, relation),
            GraphKind::Expanded => expanded_graph(&t, relation),
        }
        .map_err(err)?;
        match format {
            "dot" => Ok(g.export_dot()),
            "json" => Ok(g.export_json()),
            other => Err(err(format!("unknown format {other:?}"))),
        }
    }

    fn __repr__(&self) -> String {
        format!("Group('{}', order={})", self.name, self.group.order())
    }
}

/// Runs checks (comma-separated ids, all when empty) over newline-separated specs and
/// returns the reports as a JSON array. Timings are zeroed.
#[pyfunction]
#[pyo3(signature = (manifest, checks = "", cap = core::DEFAULT_ENUMERATION_CAP, extended = false))]
fn verify(
    py: Python<'_>,
    manifest: &str,
    checks: &str,
    cap: u128,
    extended: bool,
) -> PyResult<String> {
    let config = RunConfig {
        cap,
        extended,
        ..RunConfig::default()
    };
    let mut reports = py
        .detach(|| harness::run_corpus_text(manifest, checks, &config))
        .map_err(err)?;
    for r in &mut reports {
        r.stats.millis = 0;
    }
    serde_json::to_string(&reports).map_err(err)
}

/// `(n, [(element order, centralizer order, cycle type)])` for each degree in `lo..=hi`;
/// an empty list means no real odd-centralizer element of odd prime-power order.
#[pyfunction]
fn table_b(lo: usize, hi: usize) -> PyResult<Vec<(usize, Vec<(u64, u128, String)>)>> {
    let rows = tables::table_b(lo..=hi).map_err(err)?;
    Ok(rows
        .into_iter()
        .map(|r| {
            let f = r
                .findings
                .iter()
                .map(|f| (f.order, f.centralizer_order_alt, f.cycle_type.to_string()))
                .collect();
            (r.n, f)
        })
        .collect())
}

#[pyfunction]
fn check_ids() -> Vec<&'static str> {
    harness::CheckId::ALL.iter().map(|c| c.name()).collect()
}

#[pyfunction]
fn ppd(q: u64, n: u64) -> PyResult<Option<u64>> {
    if q < 2 || n < 1 {
        return Err(err("need q >= 2 and n >= 1"));
    }
    Ok(core::numtheory::ppd(q, n))
}

#[pyfunction]
fn cyclotomic_value(n: u64, q: u64) -> Option<u128> {
    core::numtheory::cyclotomic_value(n, q)
}

#[pymodule]
#[pyo3(name = "permcheck")]
fn permcheck_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPermutation>()?;
    m.add_class::<PyGroup>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(table_b, m)?)?;
    m.add_function(wrap_pyfunction!(check_ids, m)?)?;
    m.add_function(wrap_pyfunction!(ppd, m)?)?;
    m.add_function(wrap_pyfunction!(cyclotomic_value, m)?)?;
    Ok(())
}
