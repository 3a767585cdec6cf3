//! Python bindings. Charts come back as `Chart` objects; checks as
//! `Report` objects with `name`, `passed` and `details`.

use pyo3::exceptions::{PyIOError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use isochart::bpbp::HopfAlgebroid;
use isochart::deformation::{self, ExtWindow};
use isochart::ext::{Budget, Resolution};
use isochart::presentations::{BuiltinAlgebra, Polynomial, PresentedAlgebra};
use isochart::{CheckReport, Error};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Budget { .. } => PyRuntimeError::new_err(e.to_string()),
        Error::Io(_) => PyIOError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

#[pyclass(frozen, name = "Chart", module = "isochart")]
pub struct PyChart(isochart::Chart);

#[pymethods]
impl PyChart {
    /// Column names of the grading, e.g. `("s", "t")`.
    #[getter]
    fn columns(&self) -> Vec<&'static str> {
        self.0.grading().columns().to_vec()
    }

    fn dim(&self, key: Vec<i64>) -> usize {
        self.0.dim(&key)
    }

    fn labels(&self, key: Vec<i64>) -> Vec<String> {
        self.0.get(&key).map(|e| e.labels.clone()).unwrap_or_default()
    }

    /// `[(key, dim, labels), ...]` in key order.
    fn entries(&self) -> Vec<(Vec<i64>, usize, Vec<String>)> {
        self.0.entries().map(|(k, e)| (k.to_vec(), e.dim, e.labels.clone())).collect()
    }

    fn total_dim(&self) -> usize {
        self.0.total_dim()
    }

    fn to_tsv(&self) -> String {
        self.0.to_tsv()
    }

    #[staticmethod]
    fn from_tsv(text: &str) -> PyResult<Self> {
        isochart::Chart::from_tsv(text).map(PyChart).map_err(py_err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Chart({}, {} classes)", self.0.grading().columns().join(","), self.0.total_dim())
    }
}

#[pyclass(frozen, get_all, name = "Report", module = "isochart")]
pub struct PyReport {
    name: String,
    passed: bool,
    details: Vec<String>,
}

impl From<CheckReport> for PyReport {
    fn from(r: CheckReport) -> Self {
        Self {
            name: r.name,
            passed: r.passed,
            details: r.details,
        }
    }
}

#[pymethods]
impl PyReport {
    fn __bool__(&self) -> bool {
        self.passed
    }

    fn __repr__(&self) -> String {
        format!("Report({:?}, passed={})", self.name, self.passed)
    }
}

fn resolve(max_s: u32, max_t: u32, workers: usize, budget: Option<usize>) -> PyResult<Resolution> {
    let mut res = Resolution::new().with_workers(workers);
    if let Some(b) = budget {
        res = res.with_budget(Budget { max_module_dim: b });
    }
    res.extend(max_s, max_t).map_err(py_err)?;
    Ok(res)
}

/// `Ext^{s,t}` for `s <= max_s`, `t <= max_t` from a minimal resolution.
#[pyfunction]
#[pyo3(signature = (max_s, max_t, workers = 1, budget = None))]
fn ext_chart(py: Python<'_>, max_s: u32, max_t: u32, workers: usize, budget: Option<usize>) -> PyResult<PyChart> {
    py.detach(|| resolve(max_s, max_t, workers, budget).map(|r| PyChart(r.ext_chart(max_s, max_t))))
}

/// The same dimensions from the cobar complex.
#[pyfunction]
#[pyo3(signature = (max_s, max_t, max_cells = 5_000_000))]
fn cobar_chart(py: Python<'_>, max_s: u32, max_t: u32, max_cells: usize) -> PyResult<PyChart> {
    py.detach(|| isochart::ext::cobar_ext(max_s, max_t, max_cells).map(PyChart).map_err(py_err))
}

/// Regrades an `(s, t)` chart to `(p, q) = (2t - s, t)`.
#[pyfunction]
fn crho_chart(ext: &PyChart) -> PyResult<PyChart> {
    if ext.0.grading() != isochart::Grading::St {
        return Err(PyValueError::new_err("expected an (s,t) chart"));
    }
    Ok(PyChart(isochart::ext::crho_chart(&ext.0)))
}

#[pyfunction]
fn vanishing_check(crho: &PyChart) -> PyReport {
    isochart::ext::vanishing_check(&crho.0).into()
}

#[pyfunction]
#[pyo3(signature = (crho, n = 4, max_s = 12, max_t = 32))]
fn smash_check(crho: &PyChart, n: u32, max_s: i64, max_t: i64) -> PyReport {
    deformation::smash_rank_check(&crho.0, n, ExtWindow::new(max_s, max_t)).into()
}

/// One of `HZ_ISO`, `A_ISO`, `MBP_ISO`, `MBP_MBP_ISO`, truncated to
/// `|p| + |q| <= window`.
#[pyclass(frozen, name = "Algebra", module = "isochart")]
pub struct PyAlgebra(PresentedAlgebra);

impl PyAlgebra {
    fn poly(&self, factors: Vec<(String, u32)>) -> PyResult<Polynomial> {
        let refs: Vec<(&str, u32)> = factors.iter().map(|(n, e)| (n.as_str(), *e)).collect();
        let m = self.0.monomial(&refs).map_err(py_err)?;
        Ok(Polynomial::from_term(m))
    }
}

#[pymethods]
impl PyAlgebra {
    #[new]
    #[pyo3(signature = (name, window = 20))]
    fn new(name: &str, window: i64) -> PyResult<Self> {
        let alg = BuiltinAlgebra::ALL
            .into_iter()
            .find(|a| a.name() == name)
            .ok_or_else(|| PyValueError::new_err(format!("unknown algebra {name:?}")))?;
        Ok(Self(alg.presentation(window)))
    }

    #[getter]
    fn generators(&self) -> Vec<(String, (i64, i64))> {
        self.0.generators().iter().map(|g| (g.name.clone(), g.bidegree)).collect()
    }

    fn hilbert_dim(&self, p: i64, q: i64) -> PyResult<usize> {
        self.0.hilbert_dim(p, q).map_err(py_err)
    }

    fn normal_basis(&self, p: i64, q: i64) -> PyResult<Vec<String>> {
        let basis = self.0.normal_basis(p, q).map_err(py_err)?;
        Ok(basis.iter().map(|m| self.0.format_monomial(m)).collect())
    }

    /// Normal form of a monomial given as `[(generator, exponent), ...]`.
    fn normal_form(&self, factors: Vec<(String, u32)>) -> PyResult<String> {
        let x = self.poly(factors)?;
        let nf = self.0.normal_form(&x).map_err(py_err)?;
        Ok(self.0.format_polynomial(&nf))
    }

    #[pyo3(signature = (samples = 1000, seed = 1))]
    fn check_confluence(&self, samples: usize, seed: u64) -> PyResult<PyReport> {
        isochart::presentations::check_confluence(&self.0, samples, seed)
            .map(Into::into)
            .map_err(py_err)
    }
}

/// Towers and fiber checks for a differential file's contents.
#[pyfunction]
#[pyo3(signature = (differentials, max_stem = 20, max_s = 12))]
fn assemble(py: Python<'_>, differentials: &str, max_stem: i64, max_s: u32) -> PyResult<(String, Vec<PyReport>)> {
    let text = if differentials == "bundled" {
        isochart::data::ADAMS_DIFFERENTIALS
    } else {
        differentials
    };
    let ds = deformation::parse_differentials(text).map_err(py_err)?;
    py.detach(|| {
        let max_t = max_stem.max(0) as u32 + max_s;
        let res = resolve(max_s, max_t + 1, 1, None)?;
        let window = ExtWindow::new(max_s as i64, max_t as i64).with_max_stem(max_stem);
        let a = deformation::assemble_and_check(&res.ext_chart(max_s, max_t + 1), window, ds).map_err(py_err)?;
        Ok((a.module.to_tsv(), a.reports.into_iter().map(Into::into).collect()))
    })
}

/// Truncated `BP_*BP` structure maps, printed as polynomials.
#[pyclass(frozen, name = "BPBP", module = "isochart")]
pub struct PyBpbp(HopfAlgebroid);

#[pymethods]
impl PyBpbp {
    #[new]
    #[pyo3(signature = (degree = isochart::bpbp::DEFAULT_DEGREE))]
    fn new(degree: u32) -> PyResult<Self> {
        HopfAlgebroid::new(degree).map(Self).map_err(py_err)
    }

    #[getter]
    fn top(&self) -> usize {
        self.0.top()
    }

    fn right_unit(&self, n: usize) -> PyResult<String> {
        self.0.right_unit(n).map(|s| s.to_string()).map_err(py_err)
    }

    fn coproduct(&self, n: usize) -> PyResult<String> {
        self.0.coproduct_t(n).map(|s| s.to_string()).map_err(py_err)
    }

    fn checks(&self) -> Vec<PyReport> {
        vec![
            self.0.hazewinkel.round_trip_check().into(),
            self.0.counit_check().into(),
            self.0.coassociativity_check().into(),
            self.0.ring_map_check().into(),
        ]
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }
}

#[pyfunction]
#[pyo3(signature = (n = 3, degree = isochart::bpbp::DEFAULT_DEGREE))]
fn bpbp_quotient_check(n: usize, degree: u32) -> PyResult<PyReport> {
    isochart::bpbp::quotient_check(n, degree).map(Into::into).map_err(py_err)
}

#[pymodule(name = "isochart")]
mod isochart_module {
    #[pymodule_export]
    use super::{
        assemble, bpbp_quotient_check, cobar_chart, crho_chart, ext_chart, smash_check, vanishing_check, PyAlgebra,
        PyBpbp, PyChart, PyReport,
    };
}
