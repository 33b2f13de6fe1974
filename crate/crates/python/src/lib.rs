//! Python bindings for `hamsearch`.
//!
//! States and operators cross the boundary as Python `complex` lists (one
//! list per row for operators). Domain errors surface as `ValueError`,
//! numerical backend failures as `RuntimeError`.

use hamsearch::{analog, grover, linalg, verify, C64};
use ndarray::{Array1, Array2};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py(e: hamsearch::Error) -> PyErr {
    match e {
        hamsearch::Error::Backend(msg) => PyRuntimeError::new_err(msg),
        other => PyValueError::new_err(other.to_string()),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for hamsearch::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

#[pyclass(name = "QuantumState", module = "hamsearch_py", from_py_object)]
#[derive(Clone)]
pub struct PyState {
    inner: linalg::QuantumState,
}

#[pymethods]
impl PyState {
    /// Unit-norm state from amplitudes (norm must be 1 within 1e-12).
    #[new]
    fn new(amplitudes: Vec<C64>) -> PyResult<Self> {
        Ok(Self { inner: linalg::QuantumState::from_amplitudes(Array1::from(amplitudes)).py()? })
    }

    #[staticmethod]
    fn normalized(amplitudes: Vec<C64>) -> PyResult<Self> {
        Ok(Self { inner: linalg::QuantumState::normalized(Array1::from(amplitudes)).py()? })
    }

    #[staticmethod]
    fn uniform(n: u32) -> PyResult<Self> {
        Ok(Self { inner: linalg::uniform_state(n).py()? })
    }

    #[staticmethod]
    fn basis(dim: usize, index: usize) -> PyResult<Self> {
        Ok(Self { inner: linalg::QuantumState::basis(dim, index).py()? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn amplitudes(&self) -> Vec<C64> {
        self.inner.amplitudes().to_vec()
    }

    fn probability(&self, index: usize) -> PyResult<f64> {
        check_index(index, self.inner.dim())?;
        Ok(self.inner.probability(index))
    }

    /// <self|other>
    fn inner(&self, other: &PyState) -> PyResult<C64> {
        check_dims(self.inner.dim(), other.inner.dim())?;
        Ok(self.inner.inner(&other.inner))
    }

    fn distance(&self, other: &PyState) -> PyResult<f64> {
        check_dims(self.inner.dim(), other.inner.dim())?;
        Ok(self.inner.distance(&other.inner))
    }

    fn __len__(&self) -> usize {
        self.inner.dim()
    }

    fn __repr__(&self) -> String {
        format!("QuantumState(dim={})", self.inner.dim())
    }
}

fn check_index(index: usize, dim: usize) -> PyResult<()> {
    if index >= dim {
        return Err(PyValueError::new_err(format!("index {index} outside 0..{dim}")));
    }
    Ok(())
}

fn check_dims(a: usize, b: usize) -> PyResult<()> {
    if a != b {
        return Err(to_py(hamsearch::Error::DimensionMismatch { expected: a, found: b }));
    }
    Ok(())
}

#[pyclass(name = "DenseOperator", module = "hamsearch_py", from_py_object)]
#[derive(Clone)]
pub struct PyOperator {
    inner: linalg::DenseOperator,
}

fn op(inner: linalg::DenseOperator) -> PyOperator {
    PyOperator { inner }
}

#[pymethods]
impl PyOperator {
    /// Square operator from a list of rows.
    #[new]
    fn new(rows: Vec<Vec<C64>>) -> PyResult<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(PyValueError::new_err("operator rows must form a square matrix"));
        }
        let flat: Vec<C64> = rows.into_iter().flatten().collect();
        let m = Array2::from_shape_vec((dim, dim), flat).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(op(linalg::DenseOperator::from_array(m).py()?))
    }

    #[staticmethod]
    fn identity(dim: usize) -> Self {
        op(linalg::DenseOperator::identity(dim))
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn rows(&self) -> Vec<Vec<C64>> {
        self.inner.as_array().rows().into_iter().map(|r| r.to_vec()).collect()
    }

    fn entry(&self, row: usize, col: usize) -> PyResult<C64> {
        check_index(row, self.inner.dim())?;
        check_index(col, self.inner.dim())?;
        Ok(self.inner.entry(row, col))
    }

    fn adjoint(&self) -> Self {
        op(self.inner.adjoint())
    }

    fn scale(&self, c: C64) -> Self {
        op(self.inner.scale(c))
    }

    fn trace(&self) -> C64 {
        self.inner.trace()
    }

    fn compose(&self, other: &PyOperator) -> PyResult<Self> {
        Ok(op(self.inner.compose(&other.inner).py()?))
    }

    fn __matmul__(&self, other: &PyOperator) -> PyResult<Self> {
        self.compose(other)
    }

    fn __add__(&self, other: &PyOperator) -> PyResult<Self> {
        check_dims(self.inner.dim(), other.inner.dim())?;
        Ok(op(&self.inner + &other.inner))
    }

    fn __sub__(&self, other: &PyOperator) -> PyResult<Self> {
        check_dims(self.inner.dim(), other.inner.dim())?;
        Ok(op(&self.inner - &other.inner))
    }

    /// Applies the operator to a state, returning raw amplitudes.
    fn apply(&self, state: &PyState) -> PyResult<Vec<C64>> {
        Ok(self.inner.apply(&state.inner).py()?.to_vec())
    }

    fn apply_vector(&self, v: Vec<C64>) -> PyResult<Vec<C64>> {
        Ok(self.inner.apply_vec(Array1::from(v).view()).py()?.to_vec())
    }

    fn max_abs_diff(&self, other: &PyOperator) -> PyResult<f64> {
        check_dims(self.inner.dim(), other.inner.dim())?;
        Ok(self.inner.max_abs_diff(&other.inner))
    }

    #[pyo3(signature = (tol = linalg::PREDICATE_TOL))]
    fn is_hermitian(&self, tol: f64) -> bool {
        self.inner.is_hermitian(tol)
    }

    #[pyo3(signature = (tol = linalg::PREDICATE_TOL))]
    fn is_skew_hermitian(&self, tol: f64) -> bool {
        self.inner.is_skew_hermitian(tol)
    }

    #[pyo3(signature = (tol = linalg::PREDICATE_TOL))]
    fn is_unitary(&self, tol: f64) -> bool {
        self.inner.is_unitary(tol)
    }

    /// Largest singular value.
    fn norm(&self) -> PyResult<f64> {
        Ok(linalg::operator_norm(&self.inner).py()?.value())
    }

    /// e^A by the scaled power series.
    fn expm(&self) -> PyResult<Self> {
        Ok(op(linalg::matrix_exponential(&self.inner).py()?))
    }

    /// e^{-iHt} by the power series.
    fn propagator(&self, t: f64) -> PyResult<Self> {
        Ok(op(linalg::propagator(&self.inner, t).py()?))
    }

    /// e^{-iHt} by eigendecomposition; requires a hermitian operator.
    fn exp_hermitian(&self, t: f64) -> PyResult<Self> {
        Ok(op(linalg::exp_hermitian(&self.inner, t).py()?))
    }

    fn __repr__(&self) -> String {
        format!("DenseOperator(dim={})", self.inner.dim())
    }
}

#[pyclass(name = "SearchProblem", module = "hamsearch_py", from_py_object)]
#[derive(Clone)]
pub struct PyProblem {
    inner: grover::SearchProblem,
}

#[pymethods]
impl PyProblem {
    #[new]
    fn new(n: u32, target: usize) -> PyResult<Self> {
        Ok(Self { inner: grover::SearchProblem::new(n, target).py()? })
    }

    #[getter]
    fn qubits(&self) -> u32 {
        self.inner.qubits()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn target(&self) -> usize {
        self.inner.target()
    }

    fn __repr__(&self) -> String {
        format!("SearchProblem(n={}, target={})", self.inner.qubits(), self.inner.target())
    }
}

#[pyclass(name = "DriverUnitary", module = "hamsearch_py", from_py_object)]
#[derive(Clone)]
pub struct PyDriver {
    inner: grover::DriverUnitary,
}

#[pymethods]
impl PyDriver {
    /// Phase-adjusts `u` so that <w|U|0> is real and positive.
    #[new]
    fn new(u: &PyOperator, problem: &PyProblem) -> PyResult<Self> {
        Ok(Self { inner: grover::make_driver(&u.inner, &problem.inner).py()? })
    }

    #[staticmethod]
    fn walsh_hadamard(problem: &PyProblem) -> PyResult<Self> {
        let u = grover::walsh_hadamard(problem.inner.qubits()).py()?;
        Ok(Self { inner: grover::make_driver(&u, &problem.inner).py()? })
    }

    #[getter]
    fn overlap(&self) -> f64 {
        self.inner.overlap()
    }

    #[getter]
    fn theta(&self) -> f64 {
        self.inner.theta()
    }

    fn operator(&self) -> PyOperator {
        op(self.inner.operator().clone())
    }

    fn start_state(&self) -> PyState {
        PyState { inner: self.inner.start_state() }
    }
}

#[pyclass(name = "HamiltonianFamily", module = "hamsearch_py")]
pub struct PyFamily {
    inner: analog::HamiltonianFamily,
}

#[pymethods]
impl PyFamily {
    #[new]
    #[pyo3(signature = (sigma, target, energy = 1.0))]
    fn new(sigma: &PyState, target: usize, energy: f64) -> PyResult<Self> {
        Ok(Self { inner: analog::HamiltonianFamily::new(&sigma.inner, target, energy).py()? })
    }

    #[getter]
    fn energy(&self) -> f64 {
        self.inner.energy()
    }
    #[getter]
    fn overlap(&self) -> f64 {
        self.inner.overlap()
    }
    #[getter]
    fn theta(&self) -> f64 {
        self.inner.theta()
    }
    #[getter]
    fn eta(&self) -> f64 {
        self.inner.eta()
    }
    #[getter]
    fn t0(&self) -> f64 {
        self.inner.t0()
    }
    #[getter]
    fn matching_time(&self) -> f64 {
        self.inner.matching_time()
    }
    fn sigma(&self) -> PyState {
        PyState { inner: self.inner.sigma().clone() }
    }
    fn h_w(&self) -> PyOperator {
        op(self.inner.h_w().clone())
    }
    fn h_d(&self) -> PyOperator {
        op(self.inner.h_d().clone())
    }
    fn h_prime(&self) -> PyOperator {
        op(self.inner.h_prime().clone())
    }
    fn h(&self) -> PyOperator {
        op(self.inner.h().clone())
    }
    fn a(&self) -> PyOperator {
        op(self.inner.a().clone())
    }
    fn p(&self) -> PyOperator {
        op(self.inner.p().clone())
    }
    fn h_tilde(&self) -> PyOperator {
        op(self.inner.h_tilde().clone())
    }
}

#[pyfunction]
fn uniform_state(n: u32) -> PyResult<PyState> {
    PyState::uniform(n)
}

#[pyfunction]
fn operator_norm(a: &PyOperator) -> PyResult<f64> {
    a.norm()
}

#[pyfunction]
fn matrix_exponential(a: &PyOperator) -> PyResult<PyOperator> {
    a.expm()
}

#[pyfunction]
fn power_limit_approx(a: &PyOperator, k: u32) -> PyResult<PyOperator> {
    Ok(op(linalg::power_limit_approx(&a.inner, k).py()?))
}

#[pyfunction]
fn random_unitary(dim: usize, seed: u64) -> PyResult<PyOperator> {
    Ok(op(linalg::random_unitary(dim, seed).py()?))
}

#[pyfunction]
fn walsh_hadamard(n: u32) -> PyResult<PyOperator> {
    Ok(op(grover::walsh_hadamard(n).py()?))
}

#[pyfunction]
fn oracle_inverter(problem: &PyProblem) -> PyOperator {
    op(grover::oracle_inverter(&problem.inner))
}

#[pyfunction]
fn zero_inverter(dim: usize) -> PyResult<PyOperator> {
    Ok(op(grover::zero_inverter(dim).py()?))
}

#[pyfunction]
fn grover_iterate(driver: &PyDriver, problem: &PyProblem) -> PyResult<PyOperator> {
    Ok(op(grover::grover_iterate(&driver.inner, &problem.inner).py()?))
}

/// Returns (final state, success probability).
#[pyfunction]
fn run_grover(problem: &PyProblem, driver: &PyDriver, k: u64) -> PyResult<(PyState, f64)> {
    let (state, p) = grover::run_grover(&problem.inner, &driver.inner, k).py()?;
    Ok((PyState { inner: state }, p))
}

/// Returns (paper count, optimal count).
#[pyfunction]
fn iteration_count(x: f64) -> PyResult<(u64, u64)> {
    let c = grover::iteration_count(x).py()?;
    Ok((c.paper, c.optimal))
}

#[pyfunction]
fn grover_on_plane(x: f64) -> PyResult<[[f64; 2]; 2]> {
    grover::grover_on_plane(x).py()
}

#[pyfunction]
fn grover_time(x: f64) -> PyResult<f64> {
    analog::grover_time(x).py()
}

#[pyfunction]
fn t0_series(x: f64) -> f64 {
    analog::t0_series(x)
}

#[pyfunction]
#[pyo3(signature = (sigma, target, energy = 1.0))]
fn fg_hamiltonian(sigma: &PyState, target: usize, energy: f64) -> PyResult<PyOperator> {
    Ok(op(analog::fg_hamiltonian(&sigma.inner, target, energy).py()?))
}

#[pyfunction]
#[pyo3(signature = (sigma, target, energy = 1.0))]
fn commutator_hamiltonian(sigma: &PyState, target: usize, energy: f64) -> PyResult<PyOperator> {
    Ok(op(analog::commutator_hamiltonian(&sigma.inner, target, energy).py()?))
}

/// (c_sigma, c_w) of e^{-iH't}|sigma>.
#[pyfunction]
#[pyo3(signature = (x, t, energy = 1.0))]
fn fg_evolution_closed_form(x: f64, t: f64, energy: f64) -> (C64, C64) {
    let c = analog::fg_evolution_closed_form(x, energy, t);
    (c.c_sigma, c.c_w)
}

/// Plane matrix of e^{-iHt}; column j is the image of the j-th basis vector.
#[pyfunction]
#[pyo3(signature = (x, t, energy = 1.0))]
fn h_evolution_closed_form(x: f64, t: f64, energy: f64) -> [[f64; 2]; 2] {
    analog::h_evolution_closed_form(x, energy, t).0
}

/// Returns a dict with `amplitudes`, `peak_step` and `peak_amplitude`.
#[pyfunction]
fn naive_search<'py>(py: Python<'py>, problem: &PyProblem, eps: f64, max_steps: usize) -> PyResult<Bound<'py, PyDict>> {
    let t = analog::naive_search(&problem.inner, eps, max_steps).py()?;
    let d = PyDict::new(py);
    d.set_item("amplitudes", t.amplitudes)?;
    d.set_item("peak_step", t.peak_step)?;
    d.set_item("peak_amplitude", t.peak_amplitude)?;
    Ok(d)
}

/// Runs a verification sweep; returns a list of row dicts.
#[pyfunction]
#[pyo3(signature = (checks, n_min, n_max, seed = 0, energy = 1.0))]
fn run_sweep<'py>(
    py: Python<'py>,
    checks: Vec<String>,
    n_min: u32,
    n_max: u32,
    seed: u64,
    energy: f64,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let sweep = verify::run_sweep(&checks, n_min..=n_max, verify::SweepOptions { seed, energy }).py()?;
    sweep
        .rows()
        .iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("check_name", r.check_name())?;
            d.set_item("n", r.n())?;
            d.set_item("N", r.dim())?;
            d.set_item("x", r.x())?;
            d.set_item("t0", r.t0())?;
            d.set_item("measured", r.measured())?;
            d.set_item("predicted", r.predicted())?;
            d.set_item("tolerance", r.tolerance())?;
            d.set_item("passed", r.passed())?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
pub fn hamsearch_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyState>()?;
    m.add_class::<PyOperator>()?;
    m.add_class::<PyProblem>()?;
    m.add_class::<PyDriver>()?;
    m.add_class::<PyFamily>()?;
    m.add_function(wrap_pyfunction!(uniform_state, m)?)?;
    m.add_function(wrap_pyfunction!(operator_norm, m)?)?;
    m.add_function(wrap_pyfunction!(matrix_exponential, m)?)?;
    m.add_function(wrap_pyfunction!(power_limit_approx, m)?)?;
    m.add_function(wrap_pyfunction!(random_unitary, m)?)?;
    m.add_function(wrap_pyfunction!(walsh_hadamard, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_inverter, m)?)?;
    m.add_function(wrap_pyfunction!(zero_inverter, m)?)?;
    m.add_function(wrap_pyfunction!(grover_iterate, m)?)?;
    m.add_function(wrap_pyfunction!(run_grover, m)?)?;
    m.add_function(wrap_pyfunction!(iteration_count, m)?)?;
    m.add_function(wrap_pyfunction!(grover_on_plane, m)?)?;
    m.add_function(wrap_pyfunction!(grover_time, m)?)?;
    m.add_function(wrap_pyfunction!(t0_series, m)?)?;
    m.add_function(wrap_pyfunction!(fg_hamiltonian, m)?)?;
    m.add_function(wrap_pyfunction!(commutator_hamiltonian, m)?)?;
    m.add_function(wrap_pyfunction!(fg_evolution_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(h_evolution_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(naive_search, m)?)?;
    m.add_function(wrap_pyfunction!(run_sweep, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
