"""JIT switch for the hot kernels.

Kernels are written once against numpy and decorated with :func:`jit`.
Setting ``HEISENBERG_ISO_PURE_NUMPY=1`` (or running without numba) leaves
them as plain Python/numpy functions. The flag is read once at import.
"""

import os

_FLAG = "HEISENBERG_ISO_PURE_NUMPY"

PURE_NUMPY = os.environ.get(_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}

if not PURE_NUMPY:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        PURE_NUMPY = True

BACKEND = "numpy" if PURE_NUMPY else "numba"


def jit(func):
    if PURE_NUMPY:
        return func
    return njit(cache=True)(func)
