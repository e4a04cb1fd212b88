"""Rational points of P^k over a prime field."""

from itertools import product
from typing import Iterator, Tuple

import numpy as np

from .field import is_prime


def num_projective_points(k: int, q: int) -> int:
    return (q ** (k + 1) - 1) // (q - 1)


def _check(k, q):
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    if k < 0:
        raise ValueError("k must be >= 0")


def enumerate_projective_points(k: int, q: int) -> Iterator[Tuple[int, ...]]:
    """Normalized points (first nonzero coordinate 1) in lexicographic order."""
    _check(k, q)
    for lead in range(k, -1, -1):
        head = (0,) * lead + (1,)
        for tail in product(range(q), repeat=k - lead):
            yield head + tail


def projective_points(k: int, q: int) -> np.ndarray:
    """Same points and order as :func:`enumerate_projective_points`, as an int64 array."""
    _check(k, q)
    blocks = []
    for lead in range(k, -1, -1):
        t = k - lead
        idx = np.arange(q ** t, dtype=np.int64)
        tail = (idx[:, None] // (q ** np.arange(t - 1, -1, -1, dtype=np.int64))[None, :]) % q
        block = np.zeros((q ** t, k + 1), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1:] = tail
        blocks.append(block)
    return np.concatenate(blocks)
