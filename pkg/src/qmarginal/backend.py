"""Backend selection for the hot kernels.

The package ships two implementations of every hot kernel: a pure-numpy
path (vectorized over trial batches) and a numba ``@njit`` path (scalar
loop per trial). The environment variable ``REDUCED_STATE_BACKEND``
selects which one the library uses:

    REDUCED_STATE_BACKEND=auto    use numba when importable (default)
    REDUCED_STATE_BACKEND=numba   require numba, fail loudly if missing
    REDUCED_STATE_BACKEND=numpy   force the pure-numpy fallback

Both implementations stay importable regardless of the flag so tests and
benchmarks can compare them directly.
"""

from __future__ import annotations

import os

BACKEND_ENV = "REDUCED_STATE_BACKEND"

try:
    import numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    numba = None
    HAS_NUMBA = False


def requested_backend() -> str:
    choice = os.environ.get(BACKEND_ENV, "auto").strip().lower()
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(
            f"{BACKEND_ENV} must be one of auto|numba|numpy, got {choice!r}"
        )
    return choice


def resolve_backend() -> str:
    """Return the active backend name, honoring the env flag."""
    choice = requested_backend()
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        if not HAS_NUMBA:
            raise RuntimeError(
                f"{BACKEND_ENV}=numba but numba is not importable"
            )
        return "numba"
    return "numba" if HAS_NUMBA else "numpy"


ACTIVE_BACKEND = resolve_backend()


def njit(*args, **kwargs):
    """numba.njit passthrough; only called when numba is importable."""
    if not HAS_NUMBA:  # pragma: no cover
        raise RuntimeError("numba is not available")
    return numba.njit(*args, **kwargs)
