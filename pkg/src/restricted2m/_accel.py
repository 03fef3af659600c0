"""JIT switch for the numeric kernels.

Kernels are written in the numba-compatible subset of Python.  They are
compiled with ``numba.njit`` unless ``RESTRICTED2M_JIT=0`` is set in the
environment (or numba is missing), in which case they run as plain Python
over numpy arrays.  The choice is made once, at import time.
"""

from __future__ import annotations

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_FLAG = os.environ.get("RESTRICTED2M_JIT", "1").strip().lower()

USE_NUMBA: bool = numba is not None and _FLAG not in ("0", "false", "no", "off")
BACKEND: str = "numba" if USE_NUMBA else "python"


def kernel(fn):
    """Compile ``fn`` with numba when enabled, else return it unchanged."""
    if USE_NUMBA:
        return numba.njit(cache=True)(fn)
    return fn
