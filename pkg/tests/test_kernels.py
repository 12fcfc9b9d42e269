import math
import os
import subprocess
import sys

import numpy as np
import pytest

from thfactor import _kernels_py, kernels

compiled = pytest.mark.skipif(kernels.BACKEND != "cython", reason="extension not built")


@pytest.fixture
def rng():
    return np.random.default_rng(7)


def test_nudft_matches_direct_sum(rng):
    theta = rng.uniform(0, 2 * np.pi, 300)
    w = rng.normal(size=300) + 1j * rng.normal(size=300)
    n = np.arange(-40, 41)
    direct = np.exp(-1j * np.outer(n, theta)) @ w
    for backend in ("numpy",) + (("cython",) if kernels.BACKEND == "cython" else ()):
        got = kernels.nudft(theta, w, -40, 40, backend=backend)
        assert np.max(np.abs(got - direct)) < 1e-11


@compiled
def test_backends_agree_on_long_ranges(rng):
    theta = rng.uniform(0, 2 * np.pi, 500)
    w = rng.normal(size=500) + 1j * rng.normal(size=500)
    a = kernels.nudft(theta, w, -1000, 1000, backend="numpy")
    b = kernels.nudft(theta, w, -1000, 1000, backend="cython")
    assert np.max(np.abs(a - b)) < 1e-10


@compiled
def test_phase_walk_and_jump_product_agree(rng):
    th = np.sort(rng.uniform(0, 2 * np.pi, 4000))
    vals = np.exp(2j * th) * (2 + np.cos(th))
    a = kernels.phase_walk(vals, backend="numpy")
    b = kernels.phase_walk(vals, backend="cython")
    assert a[0] == pytest.approx(b[0], abs=1e-12)
    assert a[1] == pytest.approx(b[1], abs=1e-12)
    assert a[0] == pytest.approx(4 * np.pi, abs=1e-9)
    locs, betas = [0.0, 2.0], [0.3 + 0.1j, -0.7]
    x = kernels.jump_product(th, locs, betas, backend="numpy")
    y = kernels.jump_product(th, locs, betas, backend="cython")
    assert np.max(np.abs(x - y)) < 1e-13


def test_jump_product_formula():
    th = np.array([0.5, 3.0, 6.0])
    got = _kernels_py.jump_product(th, [1.0], [0.25])
    u = np.mod(th - 1.0, 2 * np.pi)
    assert np.allclose(got, np.exp(0.25j * (u - np.pi)))


def test_pure_python_switch():
    env = dict(os.environ, THFACTOR_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from thfactor import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_unknown_compiled_backend_request_fails_cleanly(monkeypatch):
    monkeypatch.setattr(kernels, "_compiled", None)
    with pytest.raises(RuntimeError):
        kernels.phase_walk(np.ones(3, dtype=complex), backend="cython")
