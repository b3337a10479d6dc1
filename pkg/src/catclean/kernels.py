"""Kernel backend selection.

The compiled module is used when it imports; setting ``CATCLEAN_PURE_PYTHON=1``
forces the pure-Python fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("CATCLEAN_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "cython"

scan = _impl.scan
lcs_length = _impl.lcs_length
split_identifier = _impl.split_identifier

__all__ = ["BACKEND", "scan", "lcs_length", "split_identifier"]
