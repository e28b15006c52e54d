use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use mapenum::arith::{Genus2, MPoly, Monomial};
use mapenum::bkp::identities::Identity;
use mapenum::oracle::{self, Filter};
use mapenum::rec::bipartite::{compute_bip_oneface, compute_bipartite};
use mapenum::rec::maps::{compute_maps, compute_oneface, compute_univariate, total, Engine};
use mapenum::rec::triangulations::compute_triangulations;
use mapenum::rec::{IntTable, PolyTable};

fn err(e: mapenum::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn g2_max(n_max: u32, g_max: Option<&str>) -> PyResult<u32> {
    match g_max {
        None => Ok(n_max + 1),
        Some(s) => Genus2::parse(s).map(Genus2::twice).ok_or_else(|| PyValueError::new_err(format!("bad genus `{s}`"))),
    }
}

/// A polynomial in `u`, `z`, `v` with integer coefficients.
#[pyclass(frozen, eq, skip_from_py_object, module = "mapenum")]
#[derive(Clone, PartialEq)]
pub struct Polynomial {
    inner: MPoly,
}

fn integer(c: &BigRational) -> PyResult<BigInt> {
    if c.is_integer() {
        Ok(c.to_integer())
    } else {
        Err(PyValueError::new_err(format!("non-integral coefficient {c}")))
    }
}

#[pymethods]
impl Polynomial {
    /// `{(u, z, v): coefficient}`.
    fn terms(&self) -> PyResult<BTreeMap<(u32, u32, u32), BigInt>> {
        self.inner.terms().map(|(m, c)| Ok(((m.u, m.z, m.v), integer(c)?))).collect()
    }

    fn coefficient(&self, u: u32, z: u32, v: u32) -> PyResult<BigInt> {
        integer(&self.inner.coeff(&Monomial::new(u, z, v)))
    }

    /// Value at `u = z = v = 1`.
    fn total(&self) -> BigInt {
        total(&self.inner)
    }

    #[pyo3(signature = (u, z, v = 1))]
    fn evaluate(&self, u: i64, z: i64, v: i64) -> PyResult<BigInt> {
        let r = |x: i64| BigRational::from_integer(x.into());
        integer(&self.inner.eval(&r(u), &r(z), &r(v)))
    }

    fn __getitem__(&self, key: (u32, u32, u32)) -> PyResult<BigInt> {
        let c = self.coefficient(key.0, key.1, key.2)?;
        if c == BigInt::from(0) && !self.inner.terms().any(|(m, _)| (m.u, m.z, m.v) == key) {
            return Err(PyKeyError::new_err(format!("{key:?}")));
        }
        Ok(c)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({})", self.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

fn ints(t: &IntTable) -> BTreeMap<(u32, u32), BigInt> {
    t.iter().map(|(k, v)| (k, v.clone())).collect()
}

fn polys(t: &PolyTable) -> BTreeMap<(u32, u32), Polynomial> {
    t.iter().map(|(k, p)| (k, Polynomial { inner: p.clone() })).collect()
}

/// Rooted maps `{(n, 2g): count}`.
#[pyfunction]
#[pyo3(signature = (n_max, g_max = None))]
fn maps(n_max: u32, g_max: Option<&str>) -> PyResult<BTreeMap<(u32, u32), BigInt>> {
    compute_univariate(n_max, g2_max(n_max, g_max)?).map(|t| ints(&t)).map_err(err)
}

/// `{(n, 2g): H_n^g(u, z)}` from either refined recurrence.
#[pyfunction]
#[pyo3(signature = (n_max, g_max = None, engine = "cc"))]
fn maps_polynomials(n_max: u32, g_max: Option<&str>, engine: &str) -> PyResult<BTreeMap<(u32, u32), Polynomial>> {
    let engine = match engine {
        "kz" => Engine::Kz,
        "cc" => Engine::Cc,
        _ => return Err(PyValueError::new_err(format!("unknown engine `{engine}`"))),
    };
    compute_maps(n_max, g2_max(n_max, g_max)?, engine).map(|t| polys(&t)).map_err(err)
}

/// `{(n, 2g): K_n^g(u, v, z)}`.
#[pyfunction]
#[pyo3(signature = (n_max, g_max = None))]
fn bipartite_polynomials(n_max: u32, g_max: Option<&str>) -> PyResult<BTreeMap<(u32, u32), Polynomial>> {
    compute_bipartite(n_max, g2_max(n_max, g_max)?).map(|t| polys(&t)).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n_max, g_max = None))]
fn bipartite(n_max: u32, g_max: Option<&str>) -> PyResult<BTreeMap<(u32, u32), BigInt>> {
    let t = compute_bipartite(n_max, g2_max(n_max, g_max)?).map_err(err)?;
    Ok(t.iter().map(|(k, p)| (k, total(p))).collect())
}

/// Rooted triangulations with `2n` faces, `{(n, 2g): count}`.
#[pyfunction]
#[pyo3(signature = (n_max, g_max = None))]
fn triangulations(n_max: u32, g_max: Option<&str>) -> PyResult<BTreeMap<(u32, u32), BigInt>> {
    compute_triangulations(n_max, g2_max(n_max, g_max)?).map(|t| ints(&t)).map_err(err)
}

#[pyfunction]
fn oneface(n_max: u32) -> PyResult<BTreeMap<(u32, u32), BigInt>> {
    compute_oneface(n_max).map(|t| ints(&t)).map_err(err)
}

/// One-face bipartite maps `{(n, i, j): count}` by black and white vertices.
#[pyfunction]
fn bip_oneface(n_max: u32) -> PyResult<BTreeMap<(u32, u32, u32), BigInt>> {
    let t = compute_bip_oneface(n_max).map_err(err)?;
    Ok(t.iter().map(|(k, v)| (k, v.clone())).collect())
}

/// Checks a named identity through `t^order`; returns the report as a dict.
#[pyfunction]
fn verify<'py>(py: Python<'py>, identity: &str, order: u32) -> PyResult<Bound<'py, PyDict>> {
    let r = Identity::parse(identity).and_then(|i| i.verify(order)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("identity", r.identity.name())?;
    d.set_item("model", r.model)?;
    d.set_item("order", r.order)?;
    d.set_item("input_order", r.input_order)?;
    d.set_item("window", r.window)?;
    d.set_item("passed", r.passed)?;
    d.set_item("first_nonzero", r.first_nonzero)?;
    d.set_item("seconds", r.seconds)?;
    Ok(d)
}

/// Brute-force counts from the flag model, `{(n, 2g): Polynomial}`.
#[pyfunction]
#[pyo3(signature = (edges, filter = "none"))]
fn flag_oracle(edges: u32, filter: &str) -> PyResult<BTreeMap<(u32, u32), Polynomial>> {
    let filter: Filter = filter.parse().map_err(err)?;
    let t = if edges <= oracle::LABELED_EDGE_LIMIT {
        oracle::oracle_count(edges, filter)
    } else {
        oracle::rooted_count(edges, filter)
    };
    t.map(|t| polys(&t)).map_err(err)
}

#[pymodule]
fn _mapenum(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Polynomial>()?;
    m.add_function(wrap_pyfunction!(maps, m)?)?;
    m.add_function(wrap_pyfunction!(maps_polynomials, m)?)?;
    m.add_function(wrap_pyfunction!(bipartite, m)?)?;
    m.add_function(wrap_pyfunction!(bipartite_polynomials, m)?)?;
    m.add_function(wrap_pyfunction!(triangulations, m)?)?;
    m.add_function(wrap_pyfunction!(oneface, m)?)?;
    m.add_function(wrap_pyfunction!(bip_oneface, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(flag_oracle, m)?)?;
    Ok(())
}
