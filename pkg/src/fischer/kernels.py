"""Kernel backend selection.

The compiled extension is used when it imports; setting
``FISCHER_PURE_PYTHON=1`` forces the pure-Python fallback.
"""

import os

from . import _kernels_py

if os.environ.get("FISCHER_PURE_PYTHON") == "1":
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

step = _impl.step
evolve = _impl.evolve
trajectory = _impl.trajectory

__all__ = ["BACKEND", "step", "evolve", "trajectory"]
