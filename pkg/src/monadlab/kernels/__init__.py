"""Hot loops: rank of a linear-form matrix at many points of P^k(F_q).

Both entry points take a coefficient tensor ``coeffs[i, j, v]`` (entry (i, j)
is ``sum_v coeffs[i, j, v] * z_v``) and an int64 point array of shape (P, V).
"""

import numpy as np

from .._backend import requested_backend
from . import _numpy

BACKEND = requested_backend()

if BACKEND == "numba":
    from . import _numba as _impl
else:
    _impl = _numpy


def _prep(coeffs, points, q):
    coeffs = np.ascontiguousarray(np.asarray(coeffs, dtype=np.int64) % q)
    points = np.ascontiguousarray(np.asarray(points, dtype=np.int64) % q)
    if coeffs.ndim != 3 or points.ndim != 2 or coeffs.shape[2] != points.shape[1]:
        raise ValueError(f"shape mismatch: coeffs {coeffs.shape}, points {points.shape}")
    return coeffs, points


def ranks_at_points(coeffs, points, q: int, backend: str = None) -> np.ndarray:
    coeffs, points = _prep(coeffs, points, q)
    if coeffs.shape[0] == 0 or coeffs.shape[1] == 0:
        return np.zeros(points.shape[0], dtype=np.int64)
    impl = _impl if backend is None else _select(backend)
    return impl.ranks_at_points(coeffs, points, int(q))


def first_rank_failure(coeffs, points, q: int, target: int, backend: str = None) -> int:
    """Index of the first point whose rank differs from ``target``, or -1."""
    coeffs, points = _prep(coeffs, points, q)
    if coeffs.shape[0] == 0 or coeffs.shape[1] == 0:
        return -1 if target == 0 or points.shape[0] == 0 else 0
    impl = _impl if backend is None else _select(backend)
    return int(impl.first_rank_failure(coeffs, points, int(q), int(target)))


def _select(name):
    if name == "numpy":
        return _numpy
    if name == "numba":
        from . import _numba
        return _numba
    raise ValueError(f"unknown backend {name!r}")
