use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde::Serialize;

use scross_core::combinatorics::{self as comb, Family, KSet};
use scross_core::dot::DotView;
use scross_core::extremal::{self, LemmaReport};
use scross_core::matching::{self, Side, Vertex, WeightedBipartiteGraph, WeightedSet};
use scross_core::oracle::{self, DEFAULT_ORACLE_CAP};
use scross_core::orbit;
use scross_core::sweep::{self as sweeps, Grid, SweepSpec};
use scross_core::Error;

/// Sets as sorted element lists.
type Sets = Vec<Vec<u32>>;
/// One chain: `(side, i, weight)` vertices and the types of its edges.
type Chain = (Vec<(u8, u32, u128)>, Vec<u32>);
/// A violating pair of sets.
type Violation = (Vec<u32>, Vec<u32>);

create_exception!(scross, ScrossError, PyValueError);
create_exception!(scross, CapExceeded, ScrossError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Overflow(_) => PyOverflowError::new_err(e.to_string()),
        Error::EnumerationTooLarge { .. } => CapExceeded::new_err(e.to_string()),
        other => ScrossError::new_err(other.to_string()),
    }
}

trait OrPy<T> {
    fn py_err(self) -> PyResult<T>;
}

impl<T> OrPy<T> for scross_core::Result<T> {
    fn py_err(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

fn json_value<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| ScrossError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Parameters `(n, k, s)` with `k > s >= 1` and `n >= k`.
#[pyclass(frozen, eq, hash, skip_from_py_object, module = "scross")]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Params {
    inner: comb::Params,
}

#[pymethods]
impl Params {
    #[new]
    fn new(n: u32, k: u32, s: u32) -> PyResult<Self> {
        Ok(Params { inner: comb::Params::new(n, k, s).py_err()? })
    }

    /// Builds the triple with `n = 2k - s + 1 + l`.
    #[staticmethod]
    fn from_slack(k: u32, s: u32, l: i64) -> PyResult<Self> {
        Ok(Params { inner: comb::Params::from_slack(k, s, l).py_err()? })
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    #[getter]
    fn k(&self) -> u32 {
        self.inner.k()
    }

    #[getter]
    fn s(&self) -> u32 {
        self.inner.s()
    }

    #[getter]
    fn l(&self) -> i64 {
        self.inner.l()
    }

    fn in_theorem_range(&self) -> bool {
        self.inner.in_theorem_range()
    }

    fn __repr__(&self) -> String {
        format!("Params(n={}, k={}, s={})", self.inner.n(), self.inner.k(), self.inner.s())
    }
}

fn family(n: u32, sets: Sets) -> PyResult<Family> {
    let sets = sets.iter().map(|s| KSet::new(n, s)).collect::<scross_core::Result<Vec<_>>>().py_err()?;
    let k = sets.first().map_or(0, KSet::k);
    Family::new(n, k, sets).py_err()
}

fn sets_of(f: &Family) -> Sets {
    f.iter().map(KSet::elements).collect()
}

fn graph(side1: Vec<u128>, side2: Vec<u128>, edges: Vec<(usize, usize)>) -> PyResult<WeightedBipartiteGraph> {
    WeightedBipartiteGraph::new(side1, side2, edges).py_err()
}

fn vertex_pairs(set: &WeightedSet) -> Vec<(u8, usize)> {
    set.vertices
        .iter()
        .map(|v: &Vertex| (if v.side == Side::One { 1 } else { 2 }, v.index))
        .collect()
}

fn lemma_dict<'py>(py: Python<'py>, rep: &LemmaReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("pass", rep.pass)?;
    let rows = PyList::empty(py);
    for x in &rep.instances {
        rows.append((x.left_index, x.right_index, x.left_weight.clone(), x.right_weight.clone(), x.holds))?;
    }
    d.set_item("instances", rows)?;
    Ok(d)
}

#[pyfunction]
fn binom(a: u64, b: u64) -> PyResult<u128> {
    comb::binom(a, b).py_err()
}

#[pyfunction]
fn size_c(params: &Params) -> PyResult<u128> {
    extremal::size_c(&params.inner).py_err()
}

#[pyfunction]
fn orbit_weight(i: u32, params: &Params) -> PyResult<BigUint> {
    extremal::orbit_weight_big(i, &params.inner).py_err()
}

#[pyfunction]
fn min_pair_intersection(i: u32, t: u32, params: &Params) -> PyResult<u32> {
    extremal::min_pair_intersection(i, t, &params.inner).py_err()
}

/// All sets of the extremal family, as sorted element lists.
#[pyfunction]
fn build_c(params: &Params) -> PyResult<Sets> {
    Ok(sets_of(&extremal::build_c(&params.inner).py_err()?))
}

#[pyfunction]
fn extremal_pair(params: &Params) -> PyResult<(Sets, Sets)> {
    let (a, b) = extremal::extremal_pair(&params.inner).py_err()?;
    Ok((sets_of(&a), sets_of(&b)))
}

#[pyfunction]
fn check_lemma_part1<'py>(py: Python<'py>, params: &Params) -> PyResult<Bound<'py, PyDict>> {
    lemma_dict(py, &extremal::check_lemma_coeff_part1(&params.inner).py_err()?)
}

#[pyfunction]
fn check_lemma_part2<'py>(py: Python<'py>, params: &Params) -> PyResult<Bound<'py, PyDict>> {
    lemma_dict(py, &extremal::check_lemma_coeff_part2(&params.inner).py_err()?)
}

/// The orbit graph as `{"weights": {i: |C_i|}, "edges": [(i, t), ...]}`.
#[pyfunction]
fn build_w<'py>(py: Python<'py>, params: &Params) -> PyResult<Bound<'py, PyDict>> {
    let w = orbit::build_w(&params.inner).py_err()?;
    let weights = PyDict::new(py);
    for i in w.indices() {
        weights.set_item(i, w.weight(i))?;
    }
    let d = PyDict::new(py);
    d.set_item("weights", weights)?;
    d.set_item("edges", w.edges().collect::<Vec<_>>())?;
    Ok(d)
}

/// Chains as lists of `(side, i, weight)`, each with its edge types.
#[pyfunction]
fn chain_decomposition(params: &Params) -> PyResult<Vec<Chain>> {
    let dec = orbit::build_chain_decomposition(&params.inner).py_err()?;
    Ok(dec
        .paths
        .iter()
        .map(|p| {
            let vs = p
                .vertices
                .iter()
                .map(|v| (if v.side == Side::One { 1 } else { 2 }, v.i, v.weight))
                .collect();
            (vs, p.edge_types.iter().map(|&t| u32::from(t)).collect())
        })
        .collect())
}

#[pyfunction]
fn validate_chains<'py>(py: Python<'py>, params: &Params) -> PyResult<Bound<'py, PyAny>> {
    let w = orbit::build_w(&params.inner).py_err()?;
    let dec = orbit::build_chain_decomposition(&params.inner).py_err()?;
    json_value(py, &orbit::validate_decomposition(&dec, &w))
}

#[pyfunction]
fn path_mwis(weights: Vec<u128>) -> PyResult<u128> {
    orbit::path_mwis(&weights).py_err()
}

/// Returns `(weight, [(side, index), ...])`.
#[pyfunction]
fn max_weight_independent_set(
    side1: Vec<u128>,
    side2: Vec<u128>,
    edges: Vec<(usize, usize)>,
) -> PyResult<(u128, Vec<(u8, usize)>)> {
    let best = matching::max_weight_independent_set(&graph(side1, side2, edges)?).py_err()?;
    Ok((best.weight, vertex_pairs(&best)))
}

#[pyfunction]
fn min_weight_vertex_cover(
    side1: Vec<u128>,
    side2: Vec<u128>,
    edges: Vec<(usize, usize)>,
) -> PyResult<(u128, Vec<(u8, usize)>)> {
    let cover = matching::min_weight_vertex_cover(&graph(side1, side2, edges)?).py_err()?;
    Ok((cover.weight, vertex_pairs(&cover)))
}

#[pyfunction]
#[pyo3(signature = (params, cap = DEFAULT_ORACLE_CAP))]
fn mis_g(params: &Params, cap: u128) -> PyResult<u128> {
    oracle::mis_g(&params.inner, cap).py_err()
}

/// Exact maximum of `|A| + |B|`, returned with an optimal pair.
#[pyfunction]
#[pyo3(signature = (params, cap = DEFAULT_ORACLE_CAP))]
fn max_sum_nonempty(params: &Params, cap: u128) -> PyResult<(u128, Sets, Sets)> {
    let best = oracle::max_sum_nonempty(&params.inner, cap).py_err()?;
    Ok((best.value, sets_of(&best.a), sets_of(&best.b)))
}

#[pyfunction]
#[pyo3(signature = (params, cap = DEFAULT_ORACLE_CAP))]
fn verify_theorem<'py>(py: Python<'py>, params: &Params, cap: u128) -> PyResult<Bound<'py, PyAny>> {
    json_value(py, &oracle::verify_theorem(&params.inner, cap).py_err()?)
}

#[pyfunction]
#[pyo3(signature = (params, view = "chains"))]
fn emit_dot(params: &Params, view: &str) -> PyResult<String> {
    let view = match view {
        "w" | "W" => DotView::W,
        "chains" => DotView::Chains,
        other => return Err(ScrossError::new_err(format!("unknown view {other:?}"))),
    };
    scross_core::dot::emit_dot(&params.inner, view).py_err()
}

#[pyfunction]
fn shift_closure(n: u32, sets: Sets) -> PyResult<Sets> {
    Ok(sets_of(&comb::shift_closure(&family(n, sets)?)))
}

#[pyfunction]
fn shift_closure_pair(n: u32, a: Sets, b: Sets) -> PyResult<(Sets, Sets)> {
    let (ca, cb) = comb::shift_closure_pair(&family(n, a)?, &family(n, b)?).py_err()?;
    Ok((sets_of(&ca), sets_of(&cb)))
}

/// `(holds, witness)` where the witness is a violating pair of sets or `None`.
#[pyfunction]
fn is_s_cross_intersecting(
    n: u32,
    a: Sets,
    b: Sets,
    s: u32,
) -> PyResult<(bool, Option<Violation>)> {
    let check = comb::is_s_cross_intersecting(&family(n, a)?, &family(n, b)?, s).py_err()?;
    Ok((check.holds, check.witness.map(|(x, y)| (x.elements(), y.elements()))))
}

/// Runs a sweep and returns the report as nested dicts.
#[pyfunction]
#[pyo3(signature = (k, l, checks = "theorem", s = None, cap = DEFAULT_ORACLE_CAP, jobs = 0))]
fn sweep<'py>(
    py: Python<'py>,
    k: &str,
    l: &str,
    checks: &str,
    s: Option<&str>,
    cap: u128,
    jobs: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let mut spec = SweepSpec::new(
        sweeps::parse_u32_range(k, "k").py_err()?,
        s.map(|s| sweeps::parse_u32_range(s, "s")).transpose().py_err()?,
        Grid::L(sweeps::parse_range(l).py_err()?),
        sweeps::parse_checks(checks).py_err()?,
    );
    spec.cap = cap;
    spec.jobs = jobs;
    let bundle = py.detach(|| sweeps::run_sweep(&spec)).py_err()?;
    json_value(py, &bundle)
}

#[pymodule]
fn scross(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ScrossError", m.py().get_type::<ScrossError>())?;
    m.add("CapExceeded", m.py().get_type::<CapExceeded>())?;
    m.add_class::<Params>()?;
    m.add_function(wrap_pyfunction!(binom, m)?)?;
    m.add_function(wrap_pyfunction!(size_c, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_weight, m)?)?;
    m.add_function(wrap_pyfunction!(min_pair_intersection, m)?)?;
    m.add_function(wrap_pyfunction!(build_c, m)?)?;
    m.add_function(wrap_pyfunction!(extremal_pair, m)?)?;
    m.add_function(wrap_pyfunction!(check_lemma_part1, m)?)?;
    m.add_function(wrap_pyfunction!(check_lemma_part2, m)?)?;
    m.add_function(wrap_pyfunction!(build_w, m)?)?;
    m.add_function(wrap_pyfunction!(chain_decomposition, m)?)?;
    m.add_function(wrap_pyfunction!(validate_chains, m)?)?;
    m.add_function(wrap_pyfunction!(path_mwis, m)?)?;
    m.add_function(wrap_pyfunction!(max_weight_independent_set, m)?)?;
    m.add_function(wrap_pyfunction!(min_weight_vertex_cover, m)?)?;
    m.add_function(wrap_pyfunction!(mis_g, m)?)?;
    m.add_function(wrap_pyfunction!(max_sum_nonempty, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem, m)?)?;
    m.add_function(wrap_pyfunction!(emit_dot, m)?)?;
    m.add_function(wrap_pyfunction!(shift_closure, m)?)?;
    m.add_function(wrap_pyfunction!(shift_closure_pair, m)?)?;
    m.add_function(wrap_pyfunction!(is_s_cross_intersecting, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    Ok(())
}
