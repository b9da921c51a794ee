"""Select the elimination kernel at import time.

The compiled kernel is used when the extension was built; setting
``BSARR_PURE_PYTHON=1`` forces the pure-Python twin.
"""
import os

from bsarr import _rref_py

if os.environ.get("BSARR_PURE_PYTHON", "") not in ("", "0"):
    int_rref = _rref_py.int_rref
    BACKEND = "python"
else:
    try:
        from bsarr._rref_c import int_rref
        BACKEND = "cython"
    except ImportError:  # extension not built
        int_rref = _rref_py.int_rref
        BACKEND = "python"

__all__ = ["int_rref", "BACKEND"]
