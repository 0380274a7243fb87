"""Kernel backend selection.

The compiled extension ``hermrank._ckernels`` is used when it was built;
otherwise the pure-Python twin is used.  Setting ``HERMRANK_PURE_PYTHON=1``
forces the fallback.
"""

from __future__ import annotations

import os

from hermrank import _kernels_py

_force_py = os.environ.get("HERMRANK_PURE_PYTHON", "").strip() not in ("", "0")

try:
    if _force_py:
        raise ImportError("pure-python backend requested")
    from hermrank import _ckernels as _impl
    BACKEND = "cython"
except ImportError:
    _impl = _kernels_py
    BACKEND = "python"

conv2 = _impl.conv2
conv4 = _impl.conv4
mul4 = _impl.mul4
bareiss_rank2 = _impl.bareiss_rank2
bareiss_rank4 = _impl.bareiss_rank4


def backends() -> dict:
    """All importable backends by name (the fallback is always present)."""
    found = {"python": _kernels_py}
    try:
        from hermrank import _ckernels
        found["cython"] = _ckernels
    except ImportError:
        pass
    return found
