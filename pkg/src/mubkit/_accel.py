"""Backend selection for the integer search kernels.

Kernels are plain Python/numpy functions; when numba is importable and
``MUBKIT_DISABLE_NUMBA`` is unset (or "0"), they are compiled with ``njit``.
"""

import os

ENV_DISABLE = "MUBKIT_DISABLE_NUMBA"

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and os.environ.get(ENV_DISABLE, "0") in ("", "0")
BACKEND = "numba" if USE_NUMBA else "python"


def jit(fn):
    if USE_NUMBA:
        return numba.njit(cache=True)(fn)
    return fn
