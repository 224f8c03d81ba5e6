"""JIT switch for the hot kernels.

Set ``COMMITLAB_DISABLE_NUMBA=1`` to run the pure-numpy path. The flag is read
once at import time.
"""
import os

_disabled = os.environ.get("COMMITLAB_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and not _disabled


def njit(func):
    """Compile ``func`` with numba when enabled, otherwise return it unchanged."""
    if USE_NUMBA:
        return numba.njit(cache=True)(func)
    return func
