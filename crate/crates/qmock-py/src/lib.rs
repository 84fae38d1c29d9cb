//! Python bindings for the q-series engine: exact series values, theta and
//! Pochhammer products, Hecke-type and Appell-Lerch sums, Bailey pairs, and
//! the identity catalog with its verifier.
//!
//! Series come back as `QSeries` objects whose coefficients are exact
//! rationals rendered as "num/den" strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qmock_core::bailey::{catalog_pair, verify_pair, PairCheck, PAIR_IDS};
use qmock_core::hecke::{self, AppellSpec, FSpec};
use qmock_core::identities::{self, ClassicalName, COROLLARY_IDS, IDENTITY_IDS};
use qmock_core::qproducts::{self, JKind, ThetaArg};
use qmock_core::series::Order;
use qmock_core::{EqReport, QError};

fn err(e: QError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_arg(s: &str) -> PyResult<ThetaArg> {
    s.parse::<ThetaArg>().map_err(err)
}

/// Exact truncated Laurent series in q.
#[pyclass(name = "QSeries", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyQSeries {
    inner: qmock_core::QSeries,
}

#[pymethods]
impl PyQSeries {
    /// Coefficient of q^exp as a "num/den" string.
    fn coeff(&self, exp: i64) -> String {
        self.inner.coeff(exp).to_string()
    }

    /// All nonzero terms as (exponent, "num/den") pairs.
    fn terms(&self) -> Vec<(i64, String)> {
        self.inner.terms().map(|(e, c)| (e, c.to_string())).collect()
    }

    /// Certified truncation order; None means the series is exact.
    fn order(&self) -> Option<i64> {
        match self.inner.order() {
            Order::Exact => None,
            Order::UpTo(n) => Some(n),
        }
    }

    fn min_exp(&self) -> Option<i64> {
        self.inner.min_exp()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// First exponent where the two series differ (up to `order`), if any.
    fn first_mismatch(&self, other: &PyQSeries, order: i64) -> PyResult<Option<i64>> {
        match self.inner.eq_upto(&other.inner, order).map_err(err)? {
            EqReport::Equal => Ok(None),
            EqReport::FirstMismatch { exponent, .. } => Ok(Some(exponent)),
        }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("QSeries({})", self.inner)
    }
}

fn wrap(s: qmock_core::QSeries) -> PyQSeries {
    PyQSeries { inner: s }
}

/// j(x, q^m) for x = "+/- q^k" (e.g. "q^3", "-q", "1").
#[pyfunction]
fn theta(x: &str, m: i64, order: i64) -> PyResult<PyQSeries> {
    Ok(wrap(qproducts::theta_j(parse_arg(x)?, m, order)))
}

/// J_{a,m} = j(q^a, q^m).
#[pyfunction]
fn j(a: i64, m: i64, order: i64) -> PyQSeries {
    wrap(qproducts::j_symbol(JKind::Plain, a, m, order))
}

/// Jbar_{a,m} = j(-q^a, q^m).
#[pyfunction]
fn jbar(a: i64, m: i64, order: i64) -> PyQSeries {
    wrap(qproducts::j_symbol(JKind::Bar, a, m, order))
}

/// J_m = (q^m; q^m)_inf.
#[pyfunction]
fn j_single(m: i64, order: i64) -> PyQSeries {
    wrap(qproducts::j_symbol(JKind::Single, m, m, order))
}

/// Finite Pochhammer product (x; q^step)_n.
#[pyfunction]
fn poch(x: &str, step: i64, n: u32) -> PyResult<PyQSeries> {
    Ok(wrap(qproducts::poch_finite(parse_arg(x)?, step, n)))
}

/// Infinite Pochhammer product (x; q^step)_inf to the given order.
#[pyfunction]
fn poch_inf(x: &str, step: i64, order: i64) -> PyResult<PyQSeries> {
    qproducts::poch_infinite(parse_arg(x)?, step, order)
        .map(wrap)
        .map_err(err)
}

/// Hecke-type double sum f_{a,b,c}(x, y, q^d).
#[pyfunction]
#[pyo3(signature = (a, b, c, x, y, order, d = 1))]
fn hecke_f(a: i64, b: i64, c: i64, x: &str, y: &str, order: i64, d: i64) -> PyResult<PyQSeries> {
    let spec = FSpec::new(a, b, c, parse_arg(x)?, parse_arg(y)?, d);
    Ok(wrap(hecke::hecke_f(&spec, order)))
}

/// Appell-Lerch sum m(x, q^modulus, z).
#[pyfunction]
fn appell_m(x: &str, modulus: i64, z: &str, order: i64) -> PyResult<PyQSeries> {
    let spec = AppellSpec::new(parse_arg(x)?, modulus, parse_arg(z)?).map_err(err)?;
    hecke::appell_m(&spec, order).map(wrap).map_err(err)
}

/// The Appell-Lerch expansion of f_{n,n+p,n}(x, y, q^d) for p in {1, 2, 4}.
#[pyfunction]
#[pyo3(signature = (n, p, x, y, order, d = 1))]
fn hm_rhs(n: i64, p: u8, x: &str, y: &str, order: i64, d: i64) -> PyResult<PyQSeries> {
    hecke::hm_expand(n, p, parse_arg(x)?, parse_arg(y)?, d, order)
        .map(wrap)
        .map_err(err)
}

/// A classical mock theta series: T0, omega, A, U1, S1, T1.
#[pyfunction]
fn classical(name: &str, order: i64) -> PyResult<PyQSeries> {
    let n = ClassicalName::parse(name)
        .ok_or_else(|| PyValueError::new_err(format!("unknown classical series `{name}`")))?;
    Ok(wrap(identities::eval_classical(n, order)))
}

#[pyfunction]
#[pyo3(signature = (id, order, row_cap = 4096))]
fn double_sum(id: &str, order: i64, row_cap: usize) -> PyResult<PyQSeries> {
    identities::eval_double_sum(id, order, row_cap)
        .map(wrap)
        .map_err(err)
}

#[pyfunction]
fn hecke_form(id: &str, order: i64) -> PyResult<PyQSeries> {
    identities::eval_hecke_form(id, order).map(wrap).map_err(err)
}

#[pyfunction]
fn appell_form(id: &str, order: i64) -> PyResult<PyQSeries> {
    identities::eval_appell_form(id, order).map(wrap).map_err(err)
}

#[pyfunction]
fn classical_form(id: &str, order: i64) -> PyResult<PyQSeries> {
    identities::eval_classical_form(id, order)
        .map(wrap)
        .map_err(err)
}

/// Compare every form of an identity pairwise. Returns a list of
/// (comparison, equal, first_mismatch_exponent) triples.
#[pyfunction]
#[pyo3(signature = (id, order, row_cap = 4096))]
fn verify_identity(
    id: &str,
    order: i64,
    row_cap: usize,
) -> PyResult<Vec<(String, bool, Option<i64>)>> {
    let results = identities::verify_identity(id, order, row_cap).map_err(err)?;
    Ok(results
        .into_iter()
        .map(|(label, rep)| match rep {
            EqReport::Equal => (label, true, None),
            EqReport::FirstMismatch { exponent, .. } => (label, false, Some(exponent)),
        })
        .collect())
}

/// Check a catalog Bailey pair's defining relation for n <= n_max.
#[pyfunction]
#[pyo3(signature = (id, n_max = 8, order = 40))]
fn check_pair(id: &str, n_max: usize, order: i64) -> PyResult<Option<(usize, i64)>> {
    let pair = catalog_pair(id).map_err(err)?;
    match verify_pair(&pair, n_max, order).map_err(err)? {
        PairCheck::Equal => Ok(None),
        PairCheck::FirstMismatch { n, exponent, .. } => Ok(Some((n, exponent))),
    }
}

#[pyfunction]
fn pair_alpha(id: &str, n: usize, order: i64) -> PyResult<PyQSeries> {
    let pair = catalog_pair(id).map_err(err)?;
    Ok(wrap(pair.alpha(n, order).truncated(order)))
}

#[pyfunction]
fn pair_beta(id: &str, n: usize, order: i64) -> PyResult<PyQSeries> {
    let pair = catalog_pair(id).map_err(err)?;
    Ok(wrap(pair.beta(n, order).truncated(order)))
}

#[pyfunction]
fn pair_ids() -> Vec<String> {
    PAIR_IDS.iter().map(|s| s.to_string()).collect()
}

#[pyfunction]
fn identity_ids() -> Vec<String> {
    IDENTITY_IDS.iter().map(|s| s.to_string()).collect()
}

#[pyfunction]
fn corollary_ids() -> Vec<String> {
    COROLLARY_IDS.iter().map(|s| s.to_string()).collect()
}

#[pymodule]
fn qmock_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQSeries>()?;
    m.add_function(wrap_pyfunction!(theta, m)?)?;
    m.add_function(wrap_pyfunction!(j, m)?)?;
    m.add_function(wrap_pyfunction!(jbar, m)?)?;
    m.add_function(wrap_pyfunction!(j_single, m)?)?;
    m.add_function(wrap_pyfunction!(poch, m)?)?;
    m.add_function(wrap_pyfunction!(poch_inf, m)?)?;
    m.add_function(wrap_pyfunction!(hecke_f, m)?)?;
    m.add_function(wrap_pyfunction!(appell_m, m)?)?;
    m.add_function(wrap_pyfunction!(hm_rhs, m)?)?;
    m.add_function(wrap_pyfunction!(classical, m)?)?;
    m.add_function(wrap_pyfunction!(double_sum, m)?)?;
    m.add_function(wrap_pyfunction!(hecke_form, m)?)?;
    m.add_function(wrap_pyfunction!(appell_form, m)?)?;
    m.add_function(wrap_pyfunction!(classical_form, m)?)?;
    m.add_function(wrap_pyfunction!(verify_identity, m)?)?;
    m.add_function(wrap_pyfunction!(check_pair, m)?)?;
    m.add_function(wrap_pyfunction!(pair_alpha, m)?)?;
    m.add_function(wrap_pyfunction!(pair_beta, m)?)?;
    m.add_function(wrap_pyfunction!(pair_ids, m)?)?;
    m.add_function(wrap_pyfunction!(identity_ids, m)?)?;
    m.add_function(wrap_pyfunction!(corollary_ids, m)?)?;
    Ok(())
}
