//! Python bindings. Documents go in as JSON text; reports come back as JSON
//! text for `json.loads`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use vogan_core::corpus::{check_all, CorpusSpec};
use vogan_core::params::{self, LanglandsParam, DEFAULT_UNIT_MODULUS};
use vogan_core::report::{self, langlands_of, parse_corpus_spec, parse_spec_with_modulus, Command, ParsedSpec};
use vogan_core::{vogan as vg, Error};

fn py_err(e: Error) -> PyErr {
    if e.is_input_error() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

fn parse(text: &str, unit_modulus: u32) -> PyResult<ParsedSpec> {
    parse_spec_with_modulus(text, unit_modulus).map_err(py_err)
}

/// A validated Langlands parameter (Arthur documents are converted).
#[pyclass(name = "Parameter", module = "vogan", frozen)]
struct PyParameter {
    inner: LanglandsParam,
}

#[pymethods]
impl PyParameter {
    #[new]
    #[pyo3(signature = (document, unit_modulus = DEFAULT_UNIT_MODULUS))]
    fn new(document: &str, unit_modulus: u32) -> PyResult<Self> {
        let spec = parse(document, unit_modulus)?;
        Ok(PyParameter {
            inner: langlands_of(&spec).map_err(py_err)?,
        })
    }

    #[getter]
    fn group(&self) -> String {
        self.inner.group().to_string()
    }

    #[getter]
    fn unit_modulus(&self) -> u32 {
        self.inner.unit_modulus()
    }

    /// `(u, e, a)` with `e` as a string such as `"1/2"`.
    #[getter]
    fn summands(&self) -> Vec<(u32, String, u32)> {
        self.inner
            .summands()
            .iter()
            .map(|s| (s.u.0, s.e.to_string(), s.a))
            .collect()
    }

    fn is_open(&self) -> PyResult<bool> {
        vg::is_open(&self.inner).map_err(py_err)
    }

    fn l_adjoint_order(&self) -> PyResult<usize> {
        vg::l_adjoint_order(&self.inner).map_err(py_err)
    }

    fn is_tempered(&self) -> bool {
        params::is_tempered(&self.inner)
    }

    fn is_discrete(&self) -> bool {
        params::is_discrete(&self.inner)
    }

    /// Arthur triples `(u, a, b)` when the parameter is of Arthur type.
    fn arthur_type(&self) -> Option<Vec<(u32, u32, u32)>> {
        params::is_arthur_type(&self.inner).map(|p| p.triples().iter().map(|t| (t.u.0, t.a, t.b)).collect())
    }

    #[pyo3(signature = (seed = 0))]
    fn analyze(&self, seed: u64) -> PyResult<String> {
        Ok(report::analyze(&self.inner, seed).map_err(py_err)?.to_json())
    }

    fn to_json(&self) -> String {
        report::serialize_param(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Parameter({} {})", self.inner.group(), report::param_short(&self.inner))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

fn run(document: &str, cmd: Command, seed: u64, unit_modulus: u32) -> PyResult<String> {
    report::render(&parse(document, unit_modulus)?, cmd, seed, true).map_err(py_err)
}

/// Analysis report of a parameter document, as JSON.
#[pyfunction]
#[pyo3(signature = (document, seed = 0, unit_modulus = DEFAULT_UNIT_MODULUS))]
fn analyze(document: &str, seed: u64, unit_modulus: u32) -> PyResult<String> {
    run(document, Command::Analyze, seed, unit_modulus)
}

/// Orbit table of a grading or parameter document, as JSON.
#[pyfunction]
#[pyo3(signature = (document, seed = 0, unit_modulus = DEFAULT_UNIT_MODULUS))]
fn survey(document: &str, seed: u64, unit_modulus: u32) -> PyResult<String> {
    run(document, Command::Survey, seed, unit_modulus)
}

#[pyfunction]
#[pyo3(signature = (document, seed = 0, unit_modulus = DEFAULT_UNIT_MODULUS))]
fn dual(document: &str, seed: u64, unit_modulus: u32) -> PyResult<String> {
    run(document, Command::Dual, seed, unit_modulus)
}

/// Canonical text of a document.
#[pyfunction]
#[pyo3(signature = (document, unit_modulus = DEFAULT_UNIT_MODULUS))]
fn canonical(document: &str, unit_modulus: u32) -> PyResult<String> {
    Ok(report::serialize_spec(&parse(document, unit_modulus)?))
}

/// Corpus report as JSON; the default corpus takes a while.
#[pyfunction]
#[pyo3(signature = (spec = None))]
fn corpus_check(py: Python<'_>, spec: Option<&str>) -> PyResult<String> {
    let spec = match spec {
        Some(s) => parse_corpus_spec(s).map_err(py_err)?,
        None => CorpusSpec::default(),
    };
    let report = py.detach(|| check_all(&spec)).map_err(py_err)?;
    Ok(report.to_json())
}

#[pymodule]
fn vogan(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyParameter>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(survey, m)?)?;
    m.add_function(wrap_pyfunction!(dual, m)?)?;
    m.add_function(wrap_pyfunction!(canonical, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_check, m)?)?;
    m.add("SCHEMA_VERSION", report::SCHEMA_VERSION)?;
    Ok(())
}
