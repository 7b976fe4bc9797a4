//! Python bindings for the exact Virasoro computations.
//!
//! Rationals cross the boundary as strings (`"p"` or `"p/q"`), algebra
//! elements and tensor states as the same display grammar the CLI uses, so
//! every value is exact in both directions.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use virasoro::parse::{parse_env_elem, parse_tensor_state};
use virasoro::phi;
use virasoro::rat::Rat;
use virasoro::tensor::{self, ExceptionalSet, Filtration, ModuleParams, Window};
use virasoro::verma::{self, HighestWeight, DEFAULT_LEVEL_CAP};

fn err(e: virasoro::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rat(s: &str) -> PyResult<Rat> {
    s.parse().map_err(err)
}

fn weight(c: &str, h: &str) -> PyResult<HighestWeight> {
    Ok(HighestWeight::new(rat(c)?, rat(h)?))
}

fn params(alpha: &str, beta: &str) -> PyResult<ModuleParams> {
    Ok(ModuleParams::raw(rat(alpha)?, rat(beta)?))
}

/// Display strings of the singular vectors at one level of M(c, h).
#[pyfunction]
fn singular_vectors(c: &str, h: &str, level: u32) -> PyResult<Vec<String>> {
    let hw = weight(c, h)?;
    Ok(verma::singular_vectors_at_level(&hw, level)
        .into_iter()
        .map(|v| v.to_env().to_string())
        .collect())
}

/// Status and generators of the maximal proper submodule of M(c, h).
#[pyfunction]
#[pyo3(signature = (c, h, cap=None))]
fn submodule_generators(
    py: Python<'_>,
    c: &str,
    h: &str,
    cap: Option<u32>,
) -> PyResult<Py<PyDict>> {
    let hw = weight(c, h)?;
    let gens = verma::maximal_submodule_generators(&hw, cap.unwrap_or(DEFAULT_LEVEL_CAP));
    let out = PyDict::new(py);
    out.set_item("status", gens.status.to_string())?;
    let list: Vec<(u32, String)> = gens
        .generators()
        .iter()
        .map(|(l, e)| (*l, e.to_string()))
        .collect();
    out.set_item("generators", list)?;
    out.set_item("scanned_to", gens.scanned_to)?;
    Ok(out.unbind())
}

/// phi_n of an element at integer n for raw parameters (alpha, beta).
#[pyfunction]
fn phi_value(alpha: &str, beta: &str, n: i64, elem: &str) -> PyResult<String> {
    let p = params(alpha, beta)?;
    let e = parse_env_elem(elem).map_err(err)?;
    Ok(phi::phi_eval(&p, n, &e).to_string())
}

/// phi_n of an element as a polynomial in n, parameters substituted.
#[pyfunction]
fn phi_polynomial(alpha: &str, beta: &str, elem: &str) -> PyResult<String> {
    let p = params(alpha, beta)?;
    let e = parse_env_elem(elem).map_err(err)?;
    Ok(phi::phi_poly(&p, &e).in_n.to_string())
}

/// phi_n of an element with n, a, b all symbolic.
#[pyfunction]
fn phi_symbolic(elem: &str) -> PyResult<String> {
    let e = parse_env_elem(elem).map_err(err)?;
    Ok(phi::phi_symbolic(&e).to_string())
}

/// Canonical form of intermediate series parameters.
#[pyfunction]
fn canonicalize(alpha: &str, beta: &str) -> PyResult<(String, String)> {
    let p = tensor::canonicalize(&rat(alpha)?, &rat(beta)?);
    Ok((p.alpha.to_string(), p.beta.to_string()))
}

/// Whether two (highest weight, parameter) tuples give isomorphic tensor
/// modules.
#[pyfunction]
#[allow(clippy::too_many_arguments)]
fn classify_isomorphism(
    c1: &str,
    h1: &str,
    alpha1: &str,
    beta1: &str,
    c2: &str,
    h2: &str,
    alpha2: &str,
    beta2: &str,
) -> PyResult<bool> {
    let lhs = (weight(c1, h1)?, params(alpha1, beta1)?);
    let rhs = (weight(c2, h2)?, params(alpha2, beta2)?);
    Ok(tensor::classify_isomorphism(&lhs, &rhs))
}

/// Highest weight (c, h) of the degenerate family member (p, q, m).
#[pyfunction]
fn ff_weights(p: i64, q: i64, m: i64) -> PyResult<(String, String)> {
    let hw = verma::ff_weights(p, q, m).map_err(err)?;
    Ok((hw.c.to_string(), hw.h.to_string()))
}

/// Full simplicity analysis of V(c, h) tensor V'_{alpha, beta}.
#[pyfunction]
#[pyo3(signature = (c, h, alpha, beta, cap=None))]
fn simplicity(
    py: Python<'_>,
    c: &str,
    h: &str,
    alpha: &str,
    beta: &str,
    cap: Option<u32>,
) -> PyResult<Py<PyDict>> {
    let hw = weight(c, h)?;
    let p = params(alpha, beta)?.canonicalized();
    let report = tensor::simplicity(&hw, &p, cap.unwrap_or(DEFAULT_LEVEL_CAP)).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("verdict", report.verdict.to_string())?;
    out.set_item("alpha", report.params.alpha.to_string())?;
    out.set_item("beta", report.params.beta.to_string())?;
    out.set_item("phi_roots", report.phi_roots.map(|r| r.to_string()))?;
    match report.filtration {
        Filtration::Empty => out.set_item("filtration", Vec::<(i64, String, String)>::new())?,
        Filtration::Infinite => out.set_item("filtration", "infinite")?,
        Filtration::Finite(steps) => {
            let list: Vec<(i64, String, String)> = steps
                .into_iter()
                .map(|s| (s.index, s.quotient.c.to_string(), s.quotient.h.to_string()))
                .collect();
            out.set_item("filtration", list)?;
        }
    }
    out.set_item("minimal_submodule_index", report.minimal_submodule_index)?;
    out.set_item("gen_status", report.gen_status.to_string())?;
    out.set_item("scanned_to", report.scanned_to)?;
    out.set_item("caveats", report.caveats)?;
    Ok(out.unbind())
}

/// Canonical (alpha, beta) pairs where the tensor module is not simple:
/// a list of pairs, or "family" / "all_pairs" for degenerate answers.
#[pyfunction]
#[pyo3(signature = (c, h, cap=None))]
fn exceptional_pairs(py: Python<'_>, c: &str, h: &str, cap: Option<u32>) -> PyResult<Py<PyAny>> {
    let hw = weight(c, h)?;
    let set = tensor::exceptional_pairs(&hw, cap.unwrap_or(DEFAULT_LEVEL_CAP)).map_err(err)?;
    let obj = match set {
        ExceptionalSet::Pairs(v) => {
            let list: Vec<(String, String)> = v
                .into_iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect();
            list.into_pyobject(py)?.into_any().unbind()
        }
        ExceptionalSet::Family => "family".into_pyobject(py)?.into_any().unbind(),
        ExceptionalSet::AllPairs => "all_pairs".into_pyobject(py)?.into_any().unbind(),
    };
    Ok(obj)
}

/// A truncated tensor module V(c, h) tensor V'_{alpha, beta} with an
/// explicit computation window.
#[pyclass]
struct TensorModule {
    inner: tensor::TensorModule,
}

#[pymethods]
impl TensorModule {
    #[new]
    #[pyo3(signature = (c, h, alpha, beta, cap=None, max_level=12, exp_min=-40, exp_max=40))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        c: &str,
        h: &str,
        alpha: &str,
        beta: &str,
        cap: Option<u32>,
        max_level: u32,
        exp_min: i64,
        exp_max: i64,
    ) -> PyResult<Self> {
        let hw = weight(c, h)?;
        let p = params(alpha, beta)?;
        let window = Window::new(max_level, exp_min, exp_max);
        let inner = tensor::TensorModule::new(hw, p, cap.unwrap_or(DEFAULT_LEVEL_CAP), window)
            .map_err(err)?;
        Ok(TensorModule { inner })
    }

    /// Canonical parameters as strings.
    fn params(&self) -> (String, String) {
        let p = self.inner.params();
        (p.alpha.to_string(), p.beta.to_string())
    }

    fn highest_weight(&self) -> (String, String) {
        let hw = self.inner.hw();
        (hw.c.to_string(), hw.h.to_string())
    }

    /// The basis state u (x) v_j.
    fn vacuum(&self, j: i64) -> PyResult<String> {
        self.inner.vacuum(j).map(|v| v.to_string()).map_err(err)
    }

    /// Applies d_m to a state given in the display grammar.
    fn apply(&self, m: i64, state: &str) -> PyResult<String> {
        let raw = parse_tensor_state(state).map_err(err)?;
        let v = self.inner.vector(raw).map_err(err)?;
        self.inner.apply(m, &v).map(|x| x.to_string()).map_err(err)
    }

    /// Applies the degree-k casimir-style probe operator to a state.
    fn casimir(&self, k: u32, state: &str) -> PyResult<String> {
        let raw = parse_tensor_state(state).map_err(err)?;
        let v = self.inner.vector(raw).map_err(err)?;
        self.inner
            .casimir_apply(k, &v)
            .map(|x| x.to_string())
            .map_err(err)
    }

    /// Span dimensions of the probe images of u (x) v_j for operators
    /// 1..=max_n, one prefix dimension per operator.
    fn span_probe(&self, j: i64, max_n: u32) -> PyResult<Vec<usize>> {
        let v0 = self.inner.vacuum(j).map_err(err)?;
        let mut images = Vec::new();
        let mut dims = Vec::new();
        for k in 1..=max_n {
            images.push(self.inner.casimir_apply(k, &v0).map_err(err)?);
            dims.push(tensor::span_dimension(&images));
        }
        Ok(dims)
    }
}

#[pymodule]
fn virasoro_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<TensorModule>()?;
    m.add_function(wrap_pyfunction!(singular_vectors, m)?)?;
    m.add_function(wrap_pyfunction!(submodule_generators, m)?)?;
    m.add_function(wrap_pyfunction!(phi_value, m)?)?;
    m.add_function(wrap_pyfunction!(phi_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(phi_symbolic, m)?)?;
    m.add_function(wrap_pyfunction!(canonicalize, m)?)?;
    m.add_function(wrap_pyfunction!(classify_isomorphism, m)?)?;
    m.add_function(wrap_pyfunction!(ff_weights, m)?)?;
    m.add_function(wrap_pyfunction!(simplicity, m)?)?;
    m.add_function(wrap_pyfunction!(exceptional_pairs, m)?)?;
    Ok(())
}
