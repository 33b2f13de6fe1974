use hamsearch_py::hamsearch_py;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyModule};
use std::ffi::CStr;

fn run(code: &CStr) {
    Python::initialize();
    Python::attach(|py| {
        let m = PyModule::new(py, "hamsearch_py").unwrap();
        hamsearch_py(&m).unwrap();
        let locals = PyDict::new(py);
        locals.set_item("hs", m).unwrap();
        if let Err(e) = py.run(code, Some(&locals), None) {
            panic!("{e}");
        }
    });
}

#[test]
fn grover_from_python() {
    run(c"p = hs.SearchProblem(2, 3)
d = hs.DriverUnitary.walsh_hadamard(p)
state, prob = hs.run_grover(p, d, 1)
assert abs(prob - 1.0) < 1e-12
assert abs(state.probability(3) - 1.0) < 1e-12
assert hs.iteration_count(0.5) == (2, 1)
g = hs.grover_iterate(d, p)
assert g.is_unitary()
");
}

#[test]
fn errors_map_to_value_error() {
    run(c"for bad in (lambda: hs.SearchProblem(0, 0), lambda: hs.QuantumState([1.0, 1.0]),
            lambda: hs.DenseOperator([[1, 0]]), lambda: hs.run_sweep(['bogus'], 2, 3)):
    try:
        bad()
    except ValueError:
        continue
    raise AssertionError('no error')
");
}

#[test]
fn operators_round_trip() {
    run(c"y = hs.DenseOperator([[0, -1j], [1j, 0]])
assert y.is_hermitian()
assert y.propagator(0.7).max_abs_diff(y.exp_hermitian(0.7)) < 1e-14
assert abs(hs.operator_norm(y) - 1.0) < 1e-14
assert y.rows()[0][1] == -1j
assert (y @ y).max_abs_diff(hs.DenseOperator.identity(2)) < 1e-15
fam = hs.HamiltonianFamily(hs.uniform_state(2), 0)
assert abs(fam.h().norm() - 0.8660254037844386) < 1e-12
assert abs(fam.t0 - 1.2091995761561454) < 1e-12
");
}

#[test]
fn sweep_rows_are_dicts() {
    run(c"rows = hs.run_sweep(['theorem_main'], 2, 3)
assert len(rows) == 4
assert all(r['passed'] for r in rows)
assert rows[0]['check_name'] == 'theorem_main.g_plus_2p'
");
}
