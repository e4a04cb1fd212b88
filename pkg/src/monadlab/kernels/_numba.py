"""numba versions of the rank kernels (same contracts as ``_numpy``)."""

import numpy as np
from numba import njit, prange


@njit(cache=True)
def _inv(a, q):
    t, new_t, r, new_r = 0, 1, q, a
    while new_r != 0:
        quo = r // new_r
        t, new_t = new_t, t - quo * new_t
        r, new_r = new_r, r - quo * new_r
    if t < 0:
        t += q
    return t


@njit(cache=True)
def _rank_inplace(M, q):
    R, C = M.shape
    rank = 0
    for j in range(C):
        if rank == R:
            break
        piv = -1
        for i in range(rank, R):
            if M[i, j] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for c in range(j, C):
                tmp = M[piv, c]
                M[piv, c] = M[rank, c]
                M[rank, c] = tmp
        inv = _inv(M[rank, j], q)
        for c in range(j, C):
            M[rank, c] = M[rank, c] * inv % q
        for i in range(rank + 1, R):
            f = M[i, j]
            if f != 0:
                for c in range(j, C):
                    M[i, c] = (M[i, c] - f * M[rank, c]) % q
        rank += 1
    return rank


@njit(cache=True)
def _eval_at(coeffs, point, q, M):
    R, C, V = coeffs.shape
    for i in range(R):
        for j in range(C):
            s = 0
            for v in range(V):
                s += coeffs[i, j, v] * point[v] % q
            M[i, j] = s % q


@njit(parallel=True, cache=True)
def ranks_at_points(coeffs, points, q):
    R, C, V = coeffs.shape
    P = points.shape[0]
    out = np.empty(P, np.int64)
    for p in prange(P):
        M = np.empty((R, C), np.int64)
        _eval_at(coeffs, points[p], q, M)
        out[p] = _rank_inplace(M, q)
    return out


@njit(cache=True)
def first_rank_failure(coeffs, points, q, target):
    R, C, V = coeffs.shape
    M = np.empty((R, C), np.int64)
    for p in range(points.shape[0]):
        _eval_at(coeffs, points[p], q, M)
        if _rank_inplace(M, q) != target:
            return p
    return -1
