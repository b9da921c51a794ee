import os
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from bsarr import _kernel, _rref_py

try:
    from bsarr import _rref_c
except ImportError:  # extension not built
    _rref_c = None

needs_ext = pytest.mark.skipif(_rref_c is None, reason="compiled kernel not built")

int_matrices = st.integers(1, 7).flatmap(
    lambda c: st.lists(st.lists(st.integers(-10**30, 10**30), min_size=c, max_size=c),
                       min_size=0, max_size=7).map(lambda rows: (rows, c))
)


@needs_ext
@settings(max_examples=400, deadline=None)
@given(int_matrices)
def test_compiled_and_python_kernels_agree(data):
    rows, ncols = data
    assert _rref_c.int_rref([list(r) for r in rows], ncols) == _rref_py.int_rref([list(r) for r in rows], ncols)


def test_python_kernel_basic():
    rows, pivots = _rref_py.int_rref([[2, 4], [1, 3]], 2)
    assert list(pivots) == [0, 1]
    assert len(rows) == 2


def test_env_var_forces_python_backend():
    env = dict(os.environ, BSARR_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from bsarr import _kernel; print(_kernel.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"


def test_backend_name():
    assert _kernel.BACKEND in ("cython", "python")
