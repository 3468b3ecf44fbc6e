//! Python bindings. Rational functions cross the boundary as an opaque
//! `RationalFunction` class with JSON and numeric evaluation.

use std::collections::HashMap;

use num_complex::Complex64;
use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;

use terada::ratfun::{FactoredRational, Var};
use terada::{cohomology, homology, qseries, selberg, terada as polytope};

fn to_py(e: terada::Error) -> PyErr {
    match e {
        terada::Error::DivisionByZero
        | terada::Error::ZeroDenominator
        | terada::Error::NearPole
        | terada::Error::GammaPole(_)
        | terada::Error::PoleMargin(_) => PyZeroDivisionError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Exact rational function in Laurent-polynomial numerator and denominator.
#[pyclass(
    name = "RationalFunction",
    module = "terada_py",
    frozen,
    skip_from_py_object
)]
struct PyRational(terada::ratfun::RationalFunction);

#[pymethods]
impl PyRational {
    #[staticmethod]
    fn var(name: &str) -> Self {
        PyRational(Var::named(name).into())
    }

    #[staticmethod]
    fn constant(c: i64) -> Self {
        PyRational(c.into())
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(PyRational)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    /// Numeric value at `{name: complex}`.
    fn eval(&self, point: HashMap<String, Complex64>) -> PyResult<Complex64> {
        let point = point
            .into_iter()
            .map(|(k, v)| (Var::named(&k), v))
            .collect();
        self.0.eval_complex(&point).map_err(to_py)
    }

    fn numerator(&self) -> String {
        self.0.num().to_string()
    }

    fn denominator(&self) -> String {
        self.0.den().to_string()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn __add__(&self, other: &Self) -> Self {
        PyRational(self.0.rat_add(&other.0))
    }

    fn __sub__(&self, other: &Self) -> Self {
        PyRational(self.0.rat_sub(&other.0))
    }

    fn __mul__(&self, other: &Self) -> Self {
        PyRational(self.0.rat_mul(&other.0))
    }

    fn __truediv__(&self, other: &Self) -> PyResult<Self> {
        self.0.rat_div(&other.0).map(PyRational).map_err(to_py)
    }

    fn __neg__(&self) -> Self {
        PyRational(self.0.rat_neg())
    }

    /// Exact equality by cross-multiplication.
    fn __eq__(&self, other: &Self) -> bool {
        self.0.rat_eq(&other.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RationalFunction({})", self.0)
    }
}

/// `(constant, [(factor, multiplicity), ...])` as strings.
type Factored = (String, Vec<(String, i32)>);

fn factored(f: &FactoredRational) -> Factored {
    (
        f.constant().to_string(),
        f.factors()
            .iter()
            .map(|(p, m)| (p.to_string(), *m))
            .collect(),
    )
}

/// `J_n` expanded into a single rational function.
#[pyfunction]
fn jn_closed(n: u32) -> PyRational {
    PyRational(homology::jn_closed(n).expand())
}

#[pyfunction]
fn jn_closed_factored(n: u32) -> Factored {
    factored(&homology::jn_closed(n))
}

/// Face enumeration; equals `J_n / n!`.
#[pyfunction]
fn jn_enumerated(py: Python<'_>, n: u32) -> PyResult<PyRational> {
    py.detach(|| homology::jn_enumerated(n))
        .map(PyRational)
        .map_err(to_py)
}

#[pyfunction]
fn j3_general() -> PyResult<PyRational> {
    homology::j3_general().map(PyRational).map_err(to_py)
}

#[pyfunction]
fn fvector(n: u32) -> Vec<u64> {
    polytope::fvector(n).counts
}

/// `[(sigma, juzu, face), ...]` for chambers sharing a face with the
/// identity chamber.
#[pyfunction]
fn touching_neighbors(n: u32) -> Vec<(String, String, String)> {
    polytope::touching_neighbors(n)
        .iter()
        .map(|nb| {
            let sigma = nb.sigma.iter().map(u32::to_string).collect();
            (sigma, nb.juzu().to_string(), nb.family.to_string())
        })
        .collect()
}

#[pyfunction]
fn non_touching_juzus(n: u32) -> Vec<String> {
    polytope::non_touching_juzus(n)
        .iter()
        .map(ToString::to_string)
        .collect()
}

#[pyfunction]
fn juzu_canonical(word: &str) -> PyResult<String> {
    polytope::parse_juzu(word)
        .map(|j| j.to_string())
        .map_err(to_py)
}

/// `(power of 2 pi i, rational part)` from the vertex sum.
#[pyfunction]
fn omega_self_intersection(n: u32) -> PyResult<(u32, PyRational)> {
    let t = cohomology::omega_self_intersection(n).map_err(to_py)?;
    Ok((t.power, PyRational(t.rational_part)))
}

#[pyfunction]
fn omega_closed(n: u32) -> PyResult<(u32, Factored)> {
    let t = cohomology::omega_closed(n).map_err(to_py)?;
    Ok((t.power, factored(&t.rational_part)))
}

#[pyfunction]
fn selberg_closed(n: u32, alpha: f64, beta: f64, gamma: f64) -> PyResult<Complex64> {
    let p = selberg::SelbergParams::new(n, alpha, beta, gamma).map_err(to_py)?;
    selberg::selberg_closed(&p).map_err(to_py)
}

#[pyfunction]
fn reciprocity_residual(n: u32, alpha: f64, beta: f64, gamma: f64) -> PyResult<f64> {
    let p = selberg::SelbergParams::new(n, alpha, beta, gamma).map_err(to_py)?;
    selberg::reciprocity_residual(&p).map_err(to_py)
}

/// `((alpha, beta, gamma), residual)`.
type Draw = ((f64, f64, f64), f64);

/// One `Draw` per seeded parameter set.
#[pyfunction]
fn reciprocity_sweep(n: u32, seed: u64, draws: usize) -> PyResult<Vec<Draw>> {
    let reports = selberg::reciprocity_sweep(n, seed, draws).map_err(to_py)?;
    Ok(reports
        .into_iter()
        .map(|r| ((r.params[0], r.params[1], r.params[2]), r.residual))
        .collect())
}

#[pyfunction]
fn verify_jn(py: Python<'_>, n: u32) -> PyResult<bool> {
    py.detach(|| homology::jn_report(n))
        .map(|r| r.equal)
        .map_err(to_py)
}

#[pyfunction]
fn verify_theorem2(n: u32) -> PyResult<bool> {
    cohomology::verify_theorem2(n).map_err(to_py)
}

#[pyfunction]
fn verify_beta_n(n: u32) -> PyResult<bool> {
    cohomology::verify_beta_n(n).map_err(to_py)
}

#[pyfunction]
fn verify_q_identities(n: u32) -> PyResult<bool> {
    let (g, q) = (qseries::QContext::g(), qseries::QContext::q());
    Ok(qseries::verify_g_binomial_alternating(n, g).map_err(to_py)?
        && qseries::verify_q_chu_vandermonde(n, q).map_err(to_py)?
        && qseries::verify_reversal_identity(n, q).map_err(to_py)?)
}

#[pymodule]
fn terada_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRational>()?;
    m.add_function(wrap_pyfunction!(jn_closed, m)?)?;
    m.add_function(wrap_pyfunction!(jn_closed_factored, m)?)?;
    m.add_function(wrap_pyfunction!(jn_enumerated, m)?)?;
    m.add_function(wrap_pyfunction!(j3_general, m)?)?;
    m.add_function(wrap_pyfunction!(fvector, m)?)?;
    m.add_function(wrap_pyfunction!(touching_neighbors, m)?)?;
    m.add_function(wrap_pyfunction!(non_touching_juzus, m)?)?;
    m.add_function(wrap_pyfunction!(juzu_canonical, m)?)?;
    m.add_function(wrap_pyfunction!(omega_self_intersection, m)?)?;
    m.add_function(wrap_pyfunction!(omega_closed, m)?)?;
    m.add_function(wrap_pyfunction!(selberg_closed, m)?)?;
    m.add_function(wrap_pyfunction!(reciprocity_residual, m)?)?;
    m.add_function(wrap_pyfunction!(reciprocity_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(verify_jn, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem2, m)?)?;
    m.add_function(wrap_pyfunction!(verify_beta_n, m)?)?;
    m.add_function(wrap_pyfunction!(verify_q_identities, m)?)?;
    Ok(())
}
