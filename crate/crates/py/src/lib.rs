//! Python module `ellsurf`: Weierstrass triples, fiber data and the
//! topology of the real locus.

use pyo3::exceptions::{PyLookupError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ellsurf_cli::document::TripleDocument;
use ellsurf_cli::report::ReportDocument;
use ellsurf_core::arith::parse_rational;
use ellsurf_core::error::TransformError;
use ellsurf_core::oracle::oracle_topology;
use ellsurf_core::search::{search_extremal, SearchBudget};
use ellsurf_core::topology::betti;
use ellsurf_core::transforms::{i0star_transform, twist, I0StarParams};
use ellsurf_core::weierstrass::{classify_fibers, is_real_generic, WeierstrassTriple};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Weierstrass data `(k, p, q)`; coefficients are exact rational strings in
/// ascending powers of `u`.
#[pyclass(frozen)]
struct Triple {
    inner: WeierstrassTriple,
}

#[pymethods]
impl Triple {
    #[new]
    fn new(k: u32, p: Vec<String>, q: Vec<String>) -> PyResult<Self> {
        let inner = TripleDocument { k, p, q }.to_triple().map_err(value_error)?;
        Ok(Triple { inner })
    }

    #[getter]
    fn k(&self) -> u32 {
        self.inner.k()
    }

    #[getter]
    fn p(&self) -> Vec<String> {
        TripleDocument::from_triple(&self.inner).p
    }

    #[getter]
    fn q(&self) -> Vec<String> {
        TripleDocument::from_triple(&self.inner).q
    }

    fn normalize(&self) -> Triple {
        Triple { inner: self.inner.normalize() }
    }

    fn twist(&self) -> Triple {
        Triple { inner: twist(&self.inner) }
    }

    /// I0*-transformation at the rational points `a` and `b`.
    fn i0star(&self, a: &str, b: &str) -> PyResult<Triple> {
        let parse = |s: &str| parse_rational(s).ok_or_else(|| value_error(format!("{s:?} is not an exact rational")));
        let params = I0StarParams::new(parse(a)?, parse(b)?).map_err(value_error)?;
        let inner = i0star_transform(&self.inner, &params).map_err(value_error)?;
        Ok(Triple { inner })
    }

    fn is_real_generic(&self) -> bool {
        is_real_generic(&self.inner)
    }

    /// Sum of the Euler numbers of the singular fibers.
    fn euler_sum(&self) -> PyResult<u32> {
        Ok(classify_fibers(&self.inner).map_err(value_error)?.euler_sum())
    }

    /// Betti numbers and component types of the real locus.
    fn betti<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = betti(&self.inner).map_err(value_error)?;
        let d = PyDict::new(py);
        d.set_item("h0", r.h0)?;
        d.set_item("h1", r.h1)?;
        d.set_item("h2", r.h2)?;
        d.set_item("chi", r.chi)?;
        d.set_item("orientable", r.orientable)?;
        d.set_item("components", r.components.iter().map(|c| c.to_string()).collect::<Vec<_>>())?;
        d.set_item("i1_plus", r.i1_plus)?;
        d.set_item("i1_minus", r.i1_minus)?;
        d.set_item("arc_plus", r.arc_plus)?;
        d.set_item("arc_minus", r.arc_minus)?;
        d.set_item("caveat", r.caveat)?;
        d.set_item("bounds_pass", r.bounds.all_pass())?;
        Ok(d)
    }

    /// `(h0, h1, chi)` from the cell-complex computation.
    fn oracle(&self) -> PyResult<(u32, u32, i64)> {
        let o = oracle_topology(&self.inner).map_err(value_error)?;
        Ok((o.h0, o.h1, o.chi))
    }

    /// Full report as a JSON string.
    fn report_json(&self) -> PyResult<String> {
        Ok(ReportDocument::build(&self.inner).map_err(value_error)?.to_json())
    }

    fn to_json(&self) -> String {
        TripleDocument::from_triple(&self.inner).to_json()
    }

    fn __eq__(&self, other: &Triple) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Triple(k={}, p={}, q={})", self.inner.k(), self.inner.p(), self.inner.q())
    }
}

/// Searches for a triple with `components` real components.
#[pyfunction]
#[pyo3(signature = (k, components, budget = 2000, seed = 0))]
fn search(k: u32, components: u32, budget: u64, seed: u64) -> PyResult<Triple> {
    let b = SearchBudget { max_candidates: budget, rng_seed: seed, coefficient_height_bound: 6 };
    match search_extremal(k, components, b) {
        Ok(o) => Ok(Triple { inner: o.triple }),
        Err(e @ TransformError::NotFound { .. }) => Err(PyLookupError::new_err(e.to_string())),
        Err(e) => Err(value_error(e)),
    }
}

#[pymodule]
fn ellsurf(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Triple>()?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    Ok(())
}
