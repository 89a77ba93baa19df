//! Python bindings: algebras, elements and polynomials, plus the solver and
//! dynamics entry points. Exact scalars cross the boundary as strings.

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use qdyn::dynamics::{self, PeriodicStatus, Semantics};
use qdyn::parse::{parse_element, parse_poly, AlgebraDecl};
use qdyn::solver::{self, ClassSolution, ConjClass, Mode, RootSet, SolveOptions};
use qdyn::{Element, Error, Octonion, Poly, QuatSpec, Quaternion, DEFAULT_DEGREE_CAP};

fn py_err(e: Error) -> PyErr {
    if e.is_usage() {
        PyValueError::new_err(e.to_string())
    } else {
        PyArithmeticError::new_err(e.to_string())
    }
}

fn mismatch() -> PyErr {
    PyValueError::new_err("operands belong to different algebras")
}

#[pyclass(frozen, name = "Algebra", module = "pyqdyn")]
struct PyAlgebra {
    decl: AlgebraDecl,
}

#[pymethods]
impl PyAlgebra {
    /// `quat:ALPHA,BETA@FIELD` or `oct:ALPHA,BETA,GAMMA@FIELD`.
    #[new]
    fn new(decl: &str) -> PyResult<Self> {
        Ok(PyAlgebra {
            decl: decl.parse().map_err(py_err)?,
        })
    }

    #[getter]
    fn kind(&self) -> &'static str {
        match self.decl {
            AlgebraDecl::Quat(_) => "quat",
            AlgebraDecl::Oct(_) => "oct",
        }
    }

    fn poly(&self, source: &str) -> PyResult<PyPoly> {
        Ok(PyPoly(match &self.decl {
            AlgebraDecl::Quat(s) => PolyInner::Quat(parse_poly(source, s).map_err(py_err)?),
            AlgebraDecl::Oct(s) => PolyInner::Oct(parse_poly(source, s).map_err(py_err)?),
        }))
    }

    fn element(&self, source: &str) -> PyResult<PyElement> {
        Ok(PyElement(match &self.decl {
            AlgebraDecl::Quat(s) => ElemInner::Quat(parse_element(source, s).map_err(py_err)?),
            AlgebraDecl::Oct(s) => ElemInner::Oct(parse_element(source, s).map_err(py_err)?),
        }))
    }

    fn __str__(&self) -> String {
        self.decl.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Algebra('{}')", self.decl)
    }
}

#[derive(Clone)]
enum ElemInner {
    Quat(Quaternion),
    Oct(Octonion),
}

#[pyclass(frozen, skip_from_py_object, name = "Element", module = "pyqdyn")]
#[derive(Clone)]
struct PyElement(ElemInner);

/// Applies a binary operation when both sides live in the same algebra.
macro_rules! same_kind {
    ($Ty:ident, $Inner:ident, $pair:expr, |$x:ident, $y:ident| $body:expr) => {
        match $pair {
            ($Inner::Quat($x), $Inner::Quat($y)) => Ok($Ty($Inner::Quat($body))),
            ($Inner::Oct($x), $Inner::Oct($y)) => Ok($Ty($Inner::Oct($body))),
            _ => Err(mismatch()),
        }
    };
}

#[pymethods]
impl PyElement {
    fn __str__(&self) -> String {
        match &self.0 {
            ElemInner::Quat(q) => q.to_string(),
            ElemInner::Oct(o) => o.to_string(),
        }
    }

    fn __repr__(&self) -> String {
        format!("Element('{}')", self.__str__())
    }

    fn __eq__(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (ElemInner::Quat(a), ElemInner::Quat(b)) => a == b,
            (ElemInner::Oct(a), ElemInner::Oct(b)) => a == b,
            _ => false,
        }
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        same_kind!(PyElement, ElemInner, (&self.0, &other.0), |a, b| a
            .checked_add(b)
            .map_err(py_err)?)
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        same_kind!(PyElement, ElemInner, (&self.0, &other.0), |a, b| a
            .checked_sub(b)
            .map_err(py_err)?)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        same_kind!(PyElement, ElemInner, (&self.0, &other.0), |a, b| a
            .checked_mul(b)
            .map_err(py_err)?)
    }

    fn __neg__(&self) -> Self {
        PyElement(match &self.0 {
            ElemInner::Quat(q) => ElemInner::Quat(q.negated()),
            ElemInner::Oct(o) => ElemInner::Oct(o.negated()),
        })
    }

    fn conj(&self) -> Self {
        PyElement(match &self.0 {
            ElemInner::Quat(q) => ElemInner::Quat(q.conj()),
            ElemInner::Oct(o) => ElemInner::Oct(o.conj()),
        })
    }

    fn inverse(&self) -> PyResult<Self> {
        Ok(PyElement(match &self.0 {
            ElemInner::Quat(q) => ElemInner::Quat(q.inv().map_err(py_err)?),
            ElemInner::Oct(o) => ElemInner::Oct(o.inv().map_err(py_err)?),
        }))
    }

    /// Reduced norm, as an exact string.
    fn norm(&self) -> String {
        match &self.0 {
            ElemInner::Quat(q) => q.norm().to_string(),
            ElemInner::Oct(o) => o.norm().to_string(),
        }
    }

    fn trace(&self) -> String {
        match &self.0 {
            ElemInner::Quat(q) => q.trace().to_string(),
            ElemInner::Oct(o) => o.trace().to_string(),
        }
    }

    fn coordinates(&self) -> Vec<String> {
        let coords = match &self.0 {
            ElemInner::Quat(q) => q.coords(),
            ElemInner::Oct(o) => o.coords(),
        };
        coords.iter().map(ToString::to_string).collect()
    }

    fn commutes(&self, other: &Self) -> PyResult<bool> {
        match (&self.0, &other.0) {
            (ElemInner::Quat(a), ElemInner::Quat(b)) => Ok(a.commutes(b)),
            (ElemInner::Oct(a), ElemInner::Oct(b)) => Ok(a.commutes(b)),
            _ => Err(mismatch()),
        }
    }

    /// The algebra this element belongs to.
    fn algebra(&self) -> PyAlgebra {
        PyAlgebra {
            decl: match &self.0 {
                ElemInner::Quat(q) => AlgebraDecl::Quat(q.quat_spec().clone()),
                ElemInner::Oct(o) => AlgebraDecl::Oct(o.oct_spec().clone()),
            },
        }
    }
}

#[derive(Clone)]
enum PolyInner {
    Quat(Poly<Quaternion>),
    Oct(Poly<Octonion>),
}

#[pyclass(frozen, skip_from_py_object, name = "Poly", module = "pyqdyn")]
#[derive(Clone)]
struct PyPoly(PolyInner);

impl PyPoly {
    fn quat(&self) -> PyResult<&Poly<Quaternion>> {
        match &self.0 {
            PolyInner::Quat(p) => Ok(p),
            PolyInner::Oct(_) => Err(PyValueError::new_err("needs a quaternion polynomial")),
        }
    }
}

#[pymethods]
impl PyPoly {
    fn __str__(&self) -> String {
        match &self.0 {
            PolyInner::Quat(p) => p.to_string(),
            PolyInner::Oct(p) => p.to_string(),
        }
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", self.__str__())
    }

    fn __eq__(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (PolyInner::Quat(a), PolyInner::Quat(b)) => a == b,
            (PolyInner::Oct(a), PolyInner::Oct(b)) => a == b,
            _ => false,
        }
    }

    /// `None` for the zero polynomial.
    fn degree(&self) -> Option<usize> {
        match &self.0 {
            PolyInner::Quat(p) => p.degree(),
            PolyInner::Oct(p) => p.degree(),
        }
    }

    fn coefficients(&self) -> Vec<PyElement> {
        match &self.0 {
            PolyInner::Quat(p) => p.coeffs().iter().map(|c| PyElement(ElemInner::Quat(c.clone()))).collect(),
            PolyInner::Oct(p) => p.coeffs().iter().map(|c| PyElement(ElemInner::Oct(c.clone()))).collect(),
        }
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        same_kind!(PyPoly, PolyInner, (&self.0, &other.0), |a, b| a.try_add(b).map_err(py_err)?)
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        same_kind!(PyPoly, PolyInner, (&self.0, &other.0), |a, b| a.try_sub(b).map_err(py_err)?)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        same_kind!(PyPoly, PolyInner, (&self.0, &other.0), |a, b| a.try_mul(b).map_err(py_err)?)
    }

    /// `f(g(x))`.
    fn compose(&self, other: &Self) -> PyResult<Self> {
        same_kind!(PyPoly, PolyInner, (&self.0, &other.0), |a, b| a.compose(b))
    }

    #[pyo3(signature = (n, degree_cap = DEFAULT_DEGREE_CAP))]
    fn iterate(&self, n: usize, degree_cap: usize) -> PyResult<Self> {
        Ok(PyPoly(match &self.0 {
            PolyInner::Quat(p) => PolyInner::Quat(p.iterate_compose(n, degree_cap).map_err(py_err)?),
            PolyInner::Oct(p) => PolyInner::Oct(p.iterate_compose(n, degree_cap).map_err(py_err)?),
        }))
    }

    fn eval(&self, point: &PyElement) -> PyResult<PyElement> {
        match (&self.0, &point.0) {
            (PolyInner::Quat(p), ElemInner::Quat(e)) => Ok(PyElement(ElemInner::Quat(p.eval(e)))),
            (PolyInner::Oct(p), ElemInner::Oct(e)) => Ok(PyElement(ElemInner::Oct(p.eval(e)))),
            _ => Err(mismatch()),
        }
    }

    /// `n` repeated evaluations.
    fn star_eval(&self, point: &PyElement, n: usize) -> PyResult<PyElement> {
        match (&self.0, &point.0) {
            (PolyInner::Quat(p), ElemInner::Quat(e)) => Ok(PyElement(ElemInner::Quat(p.star_eval(e, n)))),
            (PolyInner::Oct(p), ElemInner::Oct(e)) => Ok(PyElement(ElemInner::Oct(p.star_eval(e, n)))),
            _ => Err(mismatch()),
        }
    }
}

fn options(mode: &str, tolerance: f64, precision: u32) -> PyResult<SolveOptions> {
    let mode = match mode {
        "exact" => Mode::Exact,
        "numeric" => Mode::Numeric,
        other => return Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
    };
    Ok(SolveOptions {
        mode,
        tolerance,
        precision,
        ..SolveOptions::default()
    })
}

fn solution_dict<'py>(py: Python<'py>, s: &ClassSolution) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("variant", s.variant())?;
    match s.class() {
        ConjClass::Exact { trace, norm } => {
            d.set_item("trace", trace.to_string())?;
            d.set_item("norm", norm.to_string())?;
        }
        ConjClass::Numeric { trace, norm, .. } => {
            d.set_item("trace", trace)?;
            d.set_item("norm", norm)?;
            d.set_item("approx", true)?;
        }
    }
    match s {
        ClassSolution::Point { point, residual, .. } => {
            d.set_item("point", PyElement(ElemInner::Quat(point.clone())))?;
            d.set_item("residual", residual)?;
        }
        ClassSolution::Anomaly { report, .. } => d.set_item("report", report)?,
        _ => {}
    }
    Ok(d)
}

fn root_list<'py>(py: Python<'py>, set: &RootSet) -> PyResult<Vec<Bound<'py, PyDict>>> {
    set.solutions.iter().map(|s| solution_dict(py, s)).collect()
}

/// Roots of a quaternion polynomial, one dict per conjugacy class.
#[pyfunction]
#[pyo3(signature = (poly, mode = "exact", tolerance = 1e-9, precision = 64))]
fn roots<'py>(
    py: Python<'py>,
    poly: &PyPoly,
    mode: &str,
    tolerance: f64,
    precision: u32,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let set = solver::roots(poly.quat()?, &options(mode, tolerance, precision)?).map_err(py_err)?;
    root_list(py, &set)
}

/// Fixed points of a quaternion polynomial: the roots of `f(x) - x`.
#[pyfunction]
#[pyo3(signature = (poly, mode = "exact", tolerance = 1e-9, precision = 64))]
fn fixed_points<'py>(
    py: Python<'py>,
    poly: &PyPoly,
    mode: &str,
    tolerance: f64,
    precision: u32,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let set = dynamics::fixed_points(poly.quat()?, &options(mode, tolerance, precision)?)
        .map_err(py_err)?;
    root_list(py, &set)
}

/// The companion polynomial `conj(g) g`, rendered as text.
#[pyfunction]
fn companion(poly: &PyPoly) -> PyResult<String> {
    Ok(solver::companion(poly.quat()?).map_err(py_err)?.to_string())
}

#[pyfunction]
#[pyo3(signature = (poly, point, n_max = 4, semantics = "eval", degree_cap = DEFAULT_DEGREE_CAP))]
fn orbit(
    poly: &PyPoly,
    point: &PyElement,
    n_max: usize,
    semantics: &str,
    degree_cap: usize,
) -> PyResult<Vec<PyElement>> {
    let sem = match semantics {
        "eval" => Semantics::Eval,
        "compose" => Semantics::Compose,
        other => return Err(PyValueError::new_err(format!("unknown semantics {other:?}"))),
    };
    match (&poly.0, &point.0) {
        (PolyInner::Quat(f), ElemInner::Quat(p)) => Ok(dynamics::orbit(f, p, n_max, sem, degree_cap)
            .map_err(py_err)?
            .points
            .into_iter()
            .map(|q| PyElement(ElemInner::Quat(q)))
            .collect()),
        (PolyInner::Oct(f), ElemInner::Oct(p)) => Ok(dynamics::orbit(f, p, n_max, sem, degree_cap)
            .map_err(py_err)?
            .points
            .into_iter()
            .map(|o| PyElement(ElemInner::Oct(o)))
            .collect()),
        _ => Err(mismatch()),
    }
}

fn verdict_dict<'py, E: Element>(
    py: Python<'py>,
    v: &dynamics::PeriodicVerdict<E>,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("r", v.r)?;
    let (status, at) = match v.status {
        PeriodicStatus::CertifiedPeriodic => ("certified-periodic", None),
        PeriodicStatus::FixedPoint => ("fixed-point", None),
        PeriodicStatus::RefutedAt(n) => ("refuted", Some(n)),
        PeriodicStatus::Inconclusive => ("inconclusive", None),
    };
    d.set_item("status", status)?;
    d.set_item("refuted_at", at)?;
    let e = &v.evidence;
    d.set_item("r_fixed", e.r_fixed)?;
    d.set_item("commutation_failure", e.commutation_failure)?;
    d.set_item("multiples_checked", e.multiples_checked.clone())?;
    d.set_item("degree_cap_hit", e.degree_cap_hit)?;
    d.set_item("note", &e.note)?;
    Ok(d)
}

/// Certifies r-periodicity through the commuting-orbit criterion, or looks
/// for an exact counterexample among `f∘(nr)` for `n <= n_max`.
#[pyfunction]
#[pyo3(signature = (poly, point, r, n_max = 4, degree_cap = DEFAULT_DEGREE_CAP))]
fn certify_periodic<'py>(
    py: Python<'py>,
    poly: &PyPoly,
    point: &PyElement,
    r: usize,
    n_max: usize,
    degree_cap: usize,
) -> PyResult<Bound<'py, PyDict>> {
    match (&poly.0, &point.0) {
        (PolyInner::Quat(f), ElemInner::Quat(p)) => {
            verdict_dict(py, &dynamics::certify_periodic(f, p, r, n_max, degree_cap).map_err(py_err)?)
        }
        (PolyInner::Oct(f), ElemInner::Oct(p)) => {
            verdict_dict(py, &dynamics::certify_periodic(f, p, r, n_max, degree_cap).map_err(py_err)?)
        }
        _ => Err(mismatch()),
    }
}

#[pyfunction]
#[pyo3(signature = (poly, point, n_max = 4, degree_cap = DEFAULT_DEGREE_CAP))]
fn octonion_fixed_check<'py>(
    py: Python<'py>,
    poly: &PyPoly,
    point: &PyElement,
    n_max: usize,
    degree_cap: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let (PolyInner::Oct(f), ElemInner::Oct(p)) = (&poly.0, &point.0) else {
        return Err(PyValueError::new_err("needs an octonion polynomial and point"));
    };
    let rep = dynamics::octonion_fixed_check(f, p, n_max, degree_cap).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("fixed", rep.fixed)?;
    d.set_item("first_failure", rep.first_failure)?;
    let values: Vec<(usize, PyElement)> = rep
        .values
        .into_iter()
        .map(|(n, v)| (n, PyElement(ElemInner::Oct(v))))
        .collect();
    d.set_item("values", values)?;
    Ok(d)
}

/// Hamilton quaternions over `Q`, the common case.
#[pyfunction]
fn hamilton() -> PyAlgebra {
    PyAlgebra {
        decl: AlgebraDecl::Quat(QuatSpec::hamilton(qdyn::FieldSpec::Rationals)),
    }
}

#[pymodule]
pub fn pyqdyn(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyElement>()?;
    m.add_class::<PyPoly>()?;
    m.add_function(wrap_pyfunction!(hamilton, m)?)?;
    m.add_function(wrap_pyfunction!(roots, m)?)?;
    m.add_function(wrap_pyfunction!(fixed_points, m)?)?;
    m.add_function(wrap_pyfunction!(companion, m)?)?;
    m.add_function(wrap_pyfunction!(orbit, m)?)?;
    m.add_function(wrap_pyfunction!(certify_periodic, m)?)?;
    m.add_function(wrap_pyfunction!(octonion_fixed_check, m)?)?;
    m.add("DEFAULT_DEGREE_CAP", DEFAULT_DEGREE_CAP)?;
    Ok(())
}
