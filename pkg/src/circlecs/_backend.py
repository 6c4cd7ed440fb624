"""Kernel backend selection.

Prefers the compiled Cython extension; falls back to the NumPy reference
kernels when the extension is absent or when CIRCLECS_FORCE_PYTHON=1 is set
(the latter exists so tests and benchmarks can pin the fallback).
"""
import os

from . import _kernels_py

if os.environ.get("CIRCLECS_FORCE_PYTHON") == "1":
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _theta_kernels as _impl  # type: ignore[attr-defined]
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

theta_weighted_sum = _impl.theta_weighted_sum
theta_weighted_sum_batch = _impl.theta_weighted_sum_batch
gauss_theta_log = _impl.gauss_theta_log
lattice_theta_batch = _impl.lattice_theta_batch
