//! Python bindings. Rational functions cross the boundary as `RationalFunction`
//! objects, exact numbers as `fractions.Fraction`, reports as plain dicts.

use hodge_stringy::strata::{self, StratumId};
use hodge_stringy::stringy::{self, DivisorSubset};
use hodge_stringy::{verify as checks, Error, FactoredRational, Genus};
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;
use serde::Serialize;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn genus(g: u32) -> PyResult<Genus> {
    Genus::new(g).map_err(err)
}

fn subset(members: Vec<u8>) -> PyResult<DivisorSubset> {
    DivisorSubset::new(&members).map_err(err)
}

/// Converts any serializable value to Python objects through JSON.
fn to_python<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Exact rational function in `u, v` with factored denominator.
#[pyclass(name = "RationalFunction", module = "hodge_stringy", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyRational {
    inner: FactoredRational,
}

impl From<FactoredRational> for PyRational {
    fn from(inner: FactoredRational) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl PyRational {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(|inner| Self { inner })
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn constant(value: BigRational) -> Self {
        FactoredRational::from_rational(value).into()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn rat_eq(&self, other: &Self) -> bool {
        self.inner.rat_eq(&other.inner)
    }

    fn limit_at_one(&self) -> PyResult<BigRational> {
        self.inner.limit_at_one().map_err(err)
    }

    /// Value at `(u, v)`, or `None` on a pole of the stored form.
    fn eval(&self, u: BigRational, v: BigRational) -> Option<BigRational> {
        self.inner.eval(&u, &v)
    }

    /// The same function with trivial denominator, if it is a polynomial.
    fn as_polynomial(&self) -> Option<Self> {
        self.inner.as_polynomial().map(|p| FactoredRational::from_poly(p).into())
    }

    fn is_polynomial(&self) -> bool {
        self.inner.as_polynomial().is_some()
    }

    fn uv_degree(&self) -> PyResult<i64> {
        self.inner.uv_degree().map_err(err)
    }

    fn is_symmetric(&self) -> bool {
        self.inner.is_symmetric()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn swap_uv(&self) -> Self {
        self.inner.swap_uv().into()
    }

    fn __add__(&self, other: &Self) -> Self {
        (&self.inner + &other.inner).into()
    }

    fn __sub__(&self, other: &Self) -> Self {
        (&self.inner - &other.inner).into()
    }

    fn __mul__(&self, other: &Self) -> Self {
        (&self.inner * &other.inner).into()
    }

    fn __neg__(&self) -> Self {
        (-&self.inner).into()
    }

    fn __truediv__(&self, other: &Self) -> PyResult<Self> {
        self.inner.checked_div(&other.inner).map(Into::into).map_err(err)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner.rat_eq(&other.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RationalFunction({})", self.inner)
    }
}

/// E-polynomial of one stratum of the stable-pair locus.
#[pyclass(name = "StratumReport", module = "hodge_stringy", frozen)]
struct PyStratumReport {
    inner: strata::StratumReport,
}

#[pymethods]
impl PyStratumReport {
    #[getter]
    fn genus(&self) -> u32 {
        self.inner.genus.get()
    }

    #[getter]
    fn stratum(&self) -> String {
        self.inner.id.to_string()
    }

    #[getter]
    fn e(&self) -> PyRational {
        self.inner.e_poly.clone().into()
    }

    #[getter]
    fn expected_dim(&self) -> Option<i64> {
        self.inner.expected_dim
    }

    #[getter]
    fn dim_check(&self) -> bool {
        self.inner.dim_check
    }

    #[getter]
    fn symmetric(&self) -> bool {
        self.inner.symmetric
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_python(py, &self.inner)
    }

    fn __repr__(&self) -> String {
        format!("StratumReport(genus={}, stratum={})", self.genus(), self.stratum())
    }
}

/// Stringy E-function with its value at `u = v = 1`.
#[pyclass(name = "StringyReport", module = "hodge_stringy", frozen)]
struct PyStringyReport {
    inner: stringy::StringyReport,
}

#[pymethods]
impl PyStringyReport {
    #[getter]
    fn genus(&self) -> u32 {
        self.inner.genus.get()
    }

    #[getter]
    fn e_ms(&self) -> PyRational {
        self.inner.e_ms.clone().into()
    }

    #[getter]
    fn correction(&self) -> PyRational {
        self.inner.correction.clone().into()
    }

    #[getter]
    fn e_st(&self) -> PyRational {
        self.inner.e_st.clone().into()
    }

    #[getter]
    fn euler(&self) -> BigRational {
        self.inner.euler.clone()
    }

    #[getter]
    fn euler_formula(&self) -> BigRational {
        self.inner.euler_formula.clone()
    }

    #[getter]
    fn euler_ms(&self) -> BigRational {
        self.inner.euler_ms.clone()
    }

    #[getter]
    fn euler_correction(&self) -> BigRational {
        self.inner.euler_correction.clone()
    }

    #[getter]
    fn is_polynomial(&self) -> bool {
        self.inner.is_polynomial
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_python(py, &self.inner)
    }

    fn __repr__(&self) -> String {
        format!("StringyReport(genus={}, euler={})", self.genus(), self.inner.euler)
    }
}

#[pyfunction]
fn e_ms(g: u32) -> PyResult<PyRational> {
    Ok(strata::e_ms(genus(g)?).into())
}

#[pyfunction]
fn stratum_report(g: u32, stratum: &str) -> PyResult<PyStratumReport> {
    let id: StratumId = stratum.parse().map_err(err)?;
    let inner = strata::stratum_report(genus(g)?, id).map_err(err)?;
    Ok(PyStratumReport { inner })
}

#[pyfunction]
fn stratum_tags(g: u32) -> PyResult<Vec<String>> {
    Ok(StratumId::all(genus(g)?).iter().map(ToString::to_string).collect())
}

#[pyfunction]
fn stringy_e(g: u32) -> PyResult<PyStringyReport> {
    let inner = stringy::stringy_e(genus(g)?).map_err(err)?;
    Ok(PyStringyReport { inner })
}

#[pyfunction]
fn stringy_correction(g: u32) -> PyResult<PyRational> {
    stringy::stringy_correction(genus(g)?).map(Into::into).map_err(err)
}

#[pyfunction]
fn stringy_euler_formula(g: u32) -> PyResult<BigRational> {
    stringy::stringy_euler_formula(genus(g)?).map_err(err)
}

#[pyfunction]
fn e_divisor_closed(g: u32, members: Vec<u8>) -> PyResult<PyRational> {
    stringy::e_divisor_closed(subset(members)?, genus(g)?).map(Into::into).map_err(err)
}

#[pyfunction]
fn e_divisor_open(g: u32, members: Vec<u8>) -> PyResult<PyRational> {
    stringy::e_open_stratum(subset(members)?, genus(g)?).map(Into::into).map_err(err)
}

/// Runs every registered check over `gmin..=gmax`; returns one dict per outcome.
#[pyfunction]
#[pyo3(signature = (gmin, gmax, strict = false))]
fn verify<'py>(py: Python<'py>, gmin: u32, gmax: u32, strict: bool) -> PyResult<Bound<'py, PyAny>> {
    genus(gmin)?;
    genus(gmax)?;
    let outcomes = py.detach(|| checks::run_all(gmin..=gmax, strict));
    to_python(py, &outcomes)
}

#[pymodule]
#[pyo3(name = "hodge_stringy")]
fn hodge_stringy_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRational>()?;
    m.add_class::<PyStratumReport>()?;
    m.add_class::<PyStringyReport>()?;
    m.add_function(wrap_pyfunction!(e_ms, m)?)?;
    m.add_function(wrap_pyfunction!(stratum_report, m)?)?;
    m.add_function(wrap_pyfunction!(stratum_tags, m)?)?;
    m.add_function(wrap_pyfunction!(stringy_e, m)?)?;
    m.add_function(wrap_pyfunction!(stringy_correction, m)?)?;
    m.add_function(wrap_pyfunction!(stringy_euler_formula, m)?)?;
    m.add_function(wrap_pyfunction!(e_divisor_closed, m)?)?;
    m.add_function(wrap_pyfunction!(e_divisor_open, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
