import os
import subprocess
import sys

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from thzqkd import _pykernels, kernels

try:
    from thzqkd import _ckernels
except ImportError:  # pragma: no cover - extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


def test_env_forces_fallback():
    env = dict(os.environ, THZQKD_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import thzqkd.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@needs_ext
@settings(max_examples=60, deadline=None)
@given(st.integers(1, 48), st.integers(-1, 60))
def test_count_backends_agree(n_sub, offset):
    assert np.array_equal(_ckernels.imd_count_table(n_sub, offset),
                          _pykernels.imd_count_table(n_sub, offset))


@needs_ext
def test_absorption_backends_agree():
    rng = np.random.default_rng(7)
    grid = np.linspace(5.0, 75.0, 900)
    centers = rng.uniform(1.0, 90.0, 700)
    strength = rng.uniform(0, 1e-19, 700)
    width = rng.uniform(0.01, 0.2, 700)
    fast = _ckernels.line_absorption_sum(grid, centers, strength, width, 25.0)
    slow = _pykernels.line_absorption_sum(grid, centers, strength, width, 25.0)
    assert np.allclose(fast, slow, rtol=1e-12, atol=0)


def test_profile_cutoff_and_peak():
    grid = np.array([18.0, 18.577, 19.2, 60.0])
    out = kernels.line_absorption_sum(grid, np.array([18.577]), np.array([1.0]),
                                      np.array([0.1]), 25.0)
    assert out[1] == out.max()
    assert out[3] == 0.0  # beyond the wing cutoff
    # on resonance the profile peaks near 1 / (pi * width)
    assert out[1] == pytest.approx(1 / (np.pi * 0.1), rel=1e-3)
