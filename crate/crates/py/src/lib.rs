use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;

use nilws::families::{build_family, octonion_complex_structures, Family, FamilySpec};
use nilws::json::rows;
use nilws::normalizer::normalizer_algebra;
use nilws::pair::Element;
use nilws::tol::Tolerances;
use nilws::ws::catalog::run_catalog;
use nilws::ws::{ws_sample_verdict, VerdictConfig};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(v).map_err(err)?;
    py.import("json")?.call_method1("loads", (s,))
}

fn parse_spec(spec: &str) -> PyResult<Family> {
    let spec = FamilySpec::from_json(spec).map_err(err)?;
    build_family(&spec).map_err(err)
}

/// A metric pair (V ⊂ so(𝔞), ⟨,⟩).
#[pyclass(name = "MetricPair", module = "pynilws")]
struct PyMetricPair {
    inner: nilws::MetricPair,
}

#[pymethods]
impl PyMetricPair {
    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(Self { inner: serde_json::from_str(s).map_err(err)? })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(err)
    }

    #[getter]
    fn dim_v(&self) -> usize {
        self.inner.dim_v()
    }

    #[getter]
    fn dim_a(&self) -> usize {
        self.inner.dim_a()
    }

    #[getter]
    fn gram(&self) -> Vec<Vec<f64>> {
        rows(self.inner.gram())
    }

    #[getter]
    fn v_basis(&self) -> Vec<Vec<Vec<f64>>> {
        self.inner.v_basis().iter().map(rows).collect()
    }

    /// J_Z for center coordinates z.
    fn j_of(&self, z: Vec<f64>) -> PyResult<Vec<Vec<f64>>> {
        Ok(rows(&self.inner.j_of(&z).map_err(err)?))
    }

    /// [(z₁, x₁), (z₂, x₂)] as (z, x).
    fn bracket(&self, z1: Vec<f64>, x1: Vec<f64>, z2: Vec<f64>, x2: Vec<f64>) -> PyResult<(Vec<f64>, Vec<f64>)> {
        let (n, m) = (self.inner.dim_v(), self.inner.dim_a());
        if z1.len() != n || z2.len() != n || x1.len() != m || x2.len() != m {
            return Err(PyValueError::new_err("coordinate lengths do not match dim V / dim 𝔞"));
        }
        let e1 = Element::new(z1.into(), x1.into());
        let e2 = Element::new(z2.into(), x2.into());
        let b = self.inner.algebra().bracket(&e1, &e2);
        Ok((b.z.as_slice().to_vec(), b.x.as_slice().to_vec()))
    }

    fn eigenvalue_type(&self) -> Vec<usize> {
        self.inner.eigenvalue_type().multiplicities
    }

    /// (dim 𝔫, dim 𝔠, dim 𝔭)
    fn normalizer_dims(&self) -> (usize, usize, usize) {
        normalizer_algebra(&self.inner).dims
    }

    fn __repr__(&self) -> String {
        format!("MetricPair(dim_v={}, dim_a={})", self.inner.dim_v(), self.inner.dim_a())
    }
}

/// Builds a family from its JSON spec and returns its metric pair.
#[pyfunction]
fn build(spec: &str) -> PyResult<PyMetricPair> {
    Ok(PyMetricPair { inner: parse_spec(spec)?.pair })
}

/// Warnings raised while building a family.
#[pyfunction]
fn build_warnings(spec: &str) -> PyResult<Vec<String>> {
    Ok(parse_spec(spec)?.warnings)
}

/// Sampled weak-symmetry report as a dict.
#[pyfunction]
#[pyo3(signature = (spec, samples = 100, seed = 0))]
fn verify_ws<'py>(py: Python<'py>, spec: &str, samples: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let fam = parse_spec(spec)?;
    let report = py.detach(|| ws_sample_verdict(&fam, &VerdictConfig::new(samples, seed, Tolerances::default()))).map_err(err)?;
    to_py(py, &report)
}

/// Rows of the five-case catalog as a list of dicts.
#[pyfunction]
#[pyo3(signature = (theta = std::f64::consts::FRAC_PI_4, samples = 20, seed = 0))]
fn catalog<'py>(py: Python<'py>, theta: f64, samples: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let rows = py.detach(|| run_catalog(theta, None, &VerdictConfig::new(samples, seed, Tolerances::default()))).map_err(err)?;
    to_py(py, &rows)
}

/// The seven anticommuting complex structures J₁, …, J₇ on ℝ⁸.
#[pyfunction]
fn octonion_structures() -> Vec<Vec<Vec<f64>>> {
    octonion_complex_structures().iter().map(rows).collect()
}

#[pymodule]
fn pynilws(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyMetricPair>()?;
    m.add_function(wrap_pyfunction!(build, m)?)?;
    m.add_function(wrap_pyfunction!(build_warnings, m)?)?;
    m.add_function(wrap_pyfunction!(verify_ws, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(octonion_structures, m)?)?;
    Ok(())
}
