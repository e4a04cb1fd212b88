"""Kernel backend selection.

``MONADLAB_BACKEND=numpy`` forces the pure-numpy kernels; the default is
numba when it imports. ``MONADLAB_THREADS`` caps numba's worker count.
"""

import os
import logging

log = logging.getLogger(__name__)

# the TBB probe warns on older system TBB builds; omp is always present with numba wheels
os.environ.setdefault("NUMBA_THREADING_LAYER", "omp")

try:
    import numba  # noqa: F401
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def requested_backend() -> str:
    name = os.environ.get("MONADLAB_BACKEND", "numba" if HAVE_NUMBA else "numpy").strip().lower()
    if name not in ("numba", "numpy"):
        raise ValueError(f"MONADLAB_BACKEND must be 'numba' or 'numpy', got {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        log.warning("numba not importable, falling back to numpy kernels")
        return "numpy"
    return name


def set_threads(n=None) -> int:
    """Apply a thread count (or MONADLAB_THREADS); returns the count in effect."""
    if n is None:
        env = os.environ.get("MONADLAB_THREADS")
        n = int(env) if env else None
    if not HAVE_NUMBA:
        return 1
    import numba
    if n is None:
        return numba.get_num_threads()
    n = max(1, min(int(n), numba.config.NUMBA_NUM_THREADS))
    numba.set_num_threads(n)
    return n
