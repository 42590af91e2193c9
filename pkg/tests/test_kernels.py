import math
import os
import subprocess
import sys

import numpy as np
import pytest
from strategies import random_map

from eulerlab import _pykernels, kernels
from eulerlab.lifts import Compose, Mobius, PiecewiseLinear, Rotation

try:
    from eulerlab import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_c = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


def _programs():
    rng = np.random.default_rng(7)
    out = [random_map(rng, i)._packed for i in range(12)]
    out.append(Compose(Rotation(0.3), PiecewiseLinear(((0.1, 0.2), (0.6, 0.9))))._packed)
    out.append(Mobius(((2.0, 1.0), (1.0, 1.0)), 3)._packed)
    return out


def test_fallback_selected_by_environment():
    env = dict(os.environ, EULERLAB_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "from eulerlab import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")
    if _ckernels is not None and os.environ.get("EULERLAB_PURE", "") in ("", "0"):
        assert kernels.BACKEND == "cython"


@needs_c
def test_apply_program_agrees():
    x = np.random.default_rng(0).uniform(-3, 3, 2000)
    for prog in _programs():
        np.testing.assert_allclose(_ckernels.apply_program(*prog, x), _pykernels.apply_program(*prog, x), atol=1e-12)


@needs_c
def test_orbit_enclosure_agrees():
    xs = np.arange(64) / 64.0
    for prog in _programs():
        res = []
        for mod in (_pykernels, _ckernels):
            r, n = xs.copy(), np.zeros(64)
            lo, hi, q = mod.orbit_enclosure(*prog, xs, r, n, 0, 1e-6, 500, -math.inf, math.inf)
            res.append((lo, hi, q, r.copy(), n.copy()))
        (lo1, hi1, q1, r1, n1), (lo2, hi2, q2, r2, n2) = res
        assert q1 == q2
        assert lo1 == pytest.approx(lo2, abs=1e-9) and hi1 == pytest.approx(hi2, abs=1e-9)


@needs_c
def test_iterate_displacement_agrees():
    y = np.random.default_rng(1).uniform(0, 1, 50)
    for prog in _programs():
        np.testing.assert_allclose(
            _ckernels.iterate_displacement(*prog, y, 17), _pykernels.iterate_displacement(*prog, y, 17), atol=1e-9
        )


@pytest.mark.parametrize("d", [2, 3, 4])
def test_t_values_agree(backend, d):
    V = np.random.default_rng(d).standard_normal((3000, d + 1, d))
    t, deg = backend.t_values(V, 1e-9)
    t0, deg0 = _pykernels.t_values(V, 1e-9)
    assert np.array_equal(t, t0) and np.array_equal(deg.astype(bool), deg0)


def test_t_values_degenerate(backend):
    V = np.array([[[1.0, 0.0], [1.0, 0.0], [-1.0, -1.0]], [[1.0, 0.0], [0.0, 1.0], [-1.0, -1.0]]])
    t, deg = backend.t_values(V, 1e-9)
    assert list(t) == [0, 1] and list(np.asarray(deg, bool)) == [True, False]


def test_orbit_counts_integer_parts(backend):
    prog = Rotation(0.25)._packed
    xs = np.arange(4) / 4.0
    r, n = xs.copy(), np.zeros(4)
    lo, hi, q = backend.orbit_enclosure(*prog, xs, r, n, 0, 1e-12, 8, -math.inf, math.inf)
    assert q <= 8 and lo <= 0.25 <= hi
    np.testing.assert_allclose(n + r, xs + 0.25 * q)
