"""Batched modular elimination in plain numpy.

Every function works on a stack of matrices at once: the point axis is the
batch axis, so one Python-level loop over columns serves all points.
"""

import numpy as np

CHUNK = 4096


def inv_mod(a: np.ndarray, q: int) -> np.ndarray:
    # Fermat: a^(q-2); a must be nonzero mod q
    a = np.asarray(a, dtype=np.int64) % q
    out = np.ones_like(a)
    e = q - 2
    base = a.copy()
    while e:
        if e & 1:
            out = out * base % q
        base = base * base % q
        e >>= 1
    return out


def eval_linear(coeffs: np.ndarray, points: np.ndarray, q: int) -> np.ndarray:
    """(R, C, V) coefficient tensor at (P, V) points -> (P, R, C) mod q."""
    c = coeffs % q
    out = np.zeros((points.shape[0],) + c.shape[:2], dtype=np.int64)
    for v in range(c.shape[2]):
        out += (points[:, v, None, None] * c[None, :, :, v]) % q
    return out % q


def batched_rank(M: np.ndarray, q: int) -> np.ndarray:
    M = np.array(M, dtype=np.int64) % q
    P, R, C = M.shape
    rank = np.zeros(P, dtype=np.int64)
    if R == 0 or C == 0:
        return rank
    rows = np.arange(R)
    for j in range(C):
        avail = (M[:, :, j] != 0) & (rows[None, :] >= rank[:, None])
        has = avail.any(axis=1)
        b = np.nonzero(has)[0]
        if b.size == 0:
            continue
        piv = np.argmax(avail[b], axis=1)
        rr = rank[b]
        prow = M[b, piv].copy()
        M[b, piv] = M[b, rr]
        prow = prow * inv_mod(prow[:, j], q)[:, None] % q
        M[b, rr] = prow
        factor = M[b, :, j]
        factor = np.where(rows[None, :] > rr[:, None], factor, 0)
        M[b] = (M[b] - factor[:, :, None] * prow[:, None, :]) % q
        rank[b] += 1
    return rank


def ranks_at_points(coeffs: np.ndarray, points: np.ndarray, q: int) -> np.ndarray:
    out = np.empty(points.shape[0], dtype=np.int64)
    for s in range(0, points.shape[0], CHUNK):
        out[s:s + CHUNK] = batched_rank(eval_linear(coeffs, points[s:s + CHUNK], q), q)
    return out


def first_rank_failure(coeffs: np.ndarray, points: np.ndarray, q: int, target: int) -> int:
    for s in range(0, points.shape[0], CHUNK):
        r = batched_rank(eval_linear(coeffs, points[s:s + CHUNK], q), q)
        bad = np.nonzero(r != target)[0]
        if bad.size:
            return s + int(bad[0])
    return -1
