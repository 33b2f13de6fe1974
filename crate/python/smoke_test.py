"""Smoke test for the hamsearch_py extension.

Build first:

    cargo build -p hamsearch-py --release --features extension-module

then run `python3 python/smoke_test.py`. The script copies the built
library next to a temporary import path under the module name.
"""

import cmath
import importlib
import math
import os
import shutil
import sys
import tempfile

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def locate():
    for profile in ("release", "debug"):
        for name in ("libhamsearch_py.so", "libhamsearch_py.dylib"):
            path = os.path.join(ROOT, "target", profile, name)
            if os.path.exists(path):
                return path
    sys.exit("hamsearch_py library not found; run cargo build -p hamsearch-py first")


def load():
    tmp = tempfile.mkdtemp()
    shutil.copy(locate(), os.path.join(tmp, "hamsearch_py.so"))
    sys.path.insert(0, tmp)
    return importlib.import_module("hamsearch_py")


def main():
    hs = load()

    p = hs.SearchProblem(4, 5)
    d = hs.DriverUnitary.walsh_hadamard(p)
    assert abs(d.overlap - 0.25) < 1e-12
    paper, optimal = hs.iteration_count(d.overlap)
    assert (paper, optimal) == (4, 3)
    _, prob = hs.run_grover(p, d, optimal)
    assert abs(prob - math.sin(7 * math.asin(0.25)) ** 2) < 1e-10

    y = hs.DenseOperator([[0, -1j], [1j, 0]])
    u = y.exp_hermitian(0.3)
    assert u.is_unitary()
    assert abs(u.entry(1, 0) - math.sin(0.3)) < 1e-14

    fam = hs.HamiltonianFamily(hs.uniform_state(3), 7)
    u0 = fam.h().exp_hermitian(fam.t0)
    g = hs.grover_iterate(hs.DriverUnitary.walsh_hadamard(hs.SearchProblem(3, 7)), hs.SearchProblem(3, 7))
    target = g + fam.p().scale(2)
    assert u0.max_abs_diff(target) < 1e-9, u0.max_abs_diff(target)

    c_sigma, c_w = hs.fg_evolution_closed_form(0.5, math.pi)
    assert abs(abs(c_w) - 1.0) < 1e-12 and abs(c_sigma) < 1e-12

    trace = hs.naive_search(hs.SearchProblem(2, 1), 0.01, 100)
    assert trace["peak_step"] == 60 and trace["peak_amplitude"] > 0.999

    rows = hs.run_sweep(["theorem_main", "fg_arrival"], 2, 4)
    assert len(rows) == 12 and all(r["passed"] for r in rows)

    assert cmath.isclose(hs.uniform_state(1).inner(hs.QuantumState.basis(2, 0)), 1 / math.sqrt(2))
    print("hamsearch_py", hs.__version__, "smoke test ok")


if __name__ == "__main__":
    main()
