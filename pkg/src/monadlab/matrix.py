"""Matrices of polynomials, plus exact scalar linear algebra.

Twist metadata follows the graded-module convention: ``row_twists[i]`` and
``col_twists[j]`` are generator degrees of the target and source summands,
so a summand O(d) is recorded as ``-d`` and entry (i, j) must be homogeneous
of degree ``col_twists[j] - row_twists[i]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .field import FieldSpec, Scalar
from .poly import Polynomial, PolyRing


class PolyMatrix:
    __slots__ = ("ring", "entries", "nrows", "ncols", "row_twists", "col_twists")

    def __init__(self, ring: PolyRing, entries, nrows: int = None, ncols: int = None,
                 row_twists: Optional[Sequence[int]] = None, col_twists: Optional[Sequence[int]] = None):
        rows = [tuple(r) for r in entries]
        self.nrows = len(rows) if nrows is None else nrows
        self.ncols = (len(rows[0]) if rows else 0) if ncols is None else ncols
        if len(rows) != self.nrows or any(len(r) != self.ncols for r in rows):
            raise ValueError(f"entries grid is not {self.nrows}x{self.ncols}")
        for r in rows:
            for p in r:
                if p.ring != ring:
                    raise ValueError("entry from a different ring")
        self.ring = ring
        self.entries = tuple(rows)
        self.row_twists = None if row_twists is None else tuple(int(t) for t in row_twists)
        self.col_twists = None if col_twists is None else tuple(int(t) for t in col_twists)
        if (self.row_twists is None) != (self.col_twists is None):
            raise ValueError("row and column twists must be given together")
        if self.row_twists is not None:
            if len(self.row_twists) != self.nrows or len(self.col_twists) != self.ncols:
                raise ValueError("twist vector length mismatch")
            for i, r in enumerate(rows):
                for j, p in enumerate(r):
                    deg = self.col_twists[j] - self.row_twists[i]
                    if p and not p.is_homogeneous(deg):
                        raise ValueError(f"entry ({i},{j}) = {p} is not homogeneous of degree {deg}")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zeros(cls, ring: PolyRing, nrows: int, ncols: int, row_twists=None, col_twists=None) -> "PolyMatrix":
        z = ring.zero()
        return cls(ring, [[z] * ncols for _ in range(nrows)], nrows, ncols, row_twists, col_twists)

    @classmethod
    def from_scalars(cls, ring: PolyRing, mat, nrows=None, ncols=None, row_twists=None, col_twists=None) -> "PolyMatrix":
        return cls(ring, [[ring.const(c) for c in r] for r in mat], nrows, ncols, row_twists, col_twists)

    @classmethod
    def identity(cls, ring: PolyRing, n: int, twists=None) -> "PolyMatrix":
        return cls.from_scalars(ring, [[int(i == j) for j in range(n)] for i in range(n)], n, n, twists, twists)

    @classmethod
    def from_linear_tensor(cls, ring: PolyRing, coeffs, row_twists=None, col_twists=None) -> "PolyMatrix":
        coeffs = np.asarray(coeffs, dtype=object)
        R, C = coeffs.shape[:2]
        return cls(ring, [[ring.linear_form(list(coeffs[i, j])) for j in range(C)] for i in range(R)],
                   R, C, row_twists, col_twists)

    # -- inspection ---------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij) -> Polynomial:
        i, j = ij
        return self.entries[i][j]

    def is_zero(self) -> bool:
        return all(not p for r in self.entries for p in r)

    def __eq__(self, other) -> bool:
        return (isinstance(other, PolyMatrix) and self.ring == other.ring and self.shape == other.shape
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.shape, self.entries))

    def same_with_twists(self, other: "PolyMatrix") -> bool:
        return self == other and self.row_twists == other.row_twists and self.col_twists == other.col_twists

    def is_linear(self) -> bool:
        return all(p.is_homogeneous(1) for r in self.entries for p in r)

    def __repr__(self) -> str:
        body = "; ".join(", ".join(repr(p) for p in r) for r in self.entries)
        return f"PolyMatrix({self.nrows}x{self.ncols}: [{body}])"

    # -- algebra ------------------------------------------------------------

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        return matrix_mul(self, other)

    def __neg__(self) -> "PolyMatrix":
        return self.map(lambda p: -p)

    def map(self, fn, ring: PolyRing = None) -> "PolyMatrix":
        ring = ring or self.ring
        return PolyMatrix(ring, [[fn(p) for p in r] for r in self.entries], self.nrows, self.ncols,
                          self.row_twists, self.col_twists)

    def transpose(self) -> "PolyMatrix":
        """Transpose; as a map of sums of line bundles this is the dual, so twists flip sign."""
        rt = None if self.col_twists is None else [-t for t in self.col_twists]
        ct = None if self.row_twists is None else [-t for t in self.row_twists]
        ents = [[self.entries[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return PolyMatrix(self.ring, ents, self.ncols, self.nrows, rt, ct)

    @property
    def T(self) -> "PolyMatrix":
        return self.transpose()

    def reduce_mod(self, q: int) -> "PolyMatrix":
        ring = self.ring.with_field(FieldSpec.prime(q))
        return self.map(lambda p: p.reduce_mod(q, ring), ring)

    def substitute_linear(self, images: Sequence[Polynomial]) -> "PolyMatrix":
        ring = images[0].ring
        return self.map(lambda p: p.substitute_linear(images) if p else ring.zero(), ring)

    def rename(self, ring: PolyRing) -> "PolyMatrix":
        return self.map(lambda p: p.change_ring(ring), ring)

    # -- numeric views ------------------------------------------------------

    def linear_tensor(self, q: int = None) -> np.ndarray:
        """int64 coefficient tensor (rows, cols, nvars) of a linear matrix, reduced mod q."""
        f = self.ring.field
        if q is None:
            if f.q is None:
                raise ValueError("rational matrix needs an explicit prime to reduce to")
            q = f.q
        out = np.zeros((self.nrows, self.ncols, self.ring.nvars), dtype=np.int64)
        for i, r in enumerate(self.entries):
            for j, p in enumerate(r):
                for v, c in enumerate(p.linear_coeffs()):
                    out[i, j, v] = int(c) if f.q is not None else f.reduce(c, q)
        return out % q

    def evaluate(self, point: Sequence) -> List[List[Scalar]]:
        return [[p.evaluate(point) for p in r] for r in self.entries]


def matrix_mul(lhs: PolyMatrix, rhs: PolyMatrix) -> PolyMatrix:
    if lhs.ncols != rhs.nrows:
        raise ValueError(f"dimension mismatch: {lhs.shape} x {rhs.shape}")
    if lhs.ring != rhs.ring:
        raise ValueError("ring mismatch")
    ring = lhs.ring
    ents = []
    for i in range(lhs.nrows):
        row = []
        for j in range(rhs.ncols):
            acc = ring.zero()
            for l in range(lhs.ncols):
                a, b = lhs.entries[i][l], rhs.entries[l][j]
                if a and b:
                    acc = acc + a * b
            row.append(acc)
        ents.append(row)
    twisted = lhs.row_twists is not None and rhs.col_twists is not None
    return PolyMatrix(ring, ents, lhs.nrows, rhs.ncols,
                      lhs.row_twists if twisted else None, rhs.col_twists if twisted else None)


def hstack(blocks: Sequence[PolyMatrix]) -> PolyMatrix:
    ring = blocks[0].ring
    nrows = blocks[0].nrows
    if any(b.nrows != nrows for b in blocks):
        raise ValueError("row count mismatch")
    ents = [sum((list(b.entries[i]) for b in blocks), []) for i in range(nrows)]
    twisted = all(b.row_twists is not None for b in blocks)
    return PolyMatrix(ring, ents, nrows, sum(b.ncols for b in blocks),
                      blocks[0].row_twists if twisted else None,
                      sum((list(b.col_twists) for b in blocks), []) if twisted else None)


def vstack(blocks: Sequence[PolyMatrix]) -> PolyMatrix:
    ring = blocks[0].ring
    ncols = blocks[0].ncols
    if any(b.ncols != ncols for b in blocks):
        raise ValueError("column count mismatch")
    ents = [r for b in blocks for r in b.entries]
    twisted = all(b.row_twists is not None for b in blocks)
    return PolyMatrix(ring, ents, sum(b.nrows for b in blocks), ncols,
                      sum((list(b.row_twists) for b in blocks), []) if twisted else None,
                      blocks[0].col_twists if twisted else None)


@dataclass(frozen=True)
class ProjPoint:
    coords: Tuple[int, ...]
    q: int

    def __post_init__(self):
        if not any(c % self.q for c in self.coords):
            raise ValueError("the zero vector is not a projective point")
        lead = next(c % self.q for c in self.coords if c % self.q)
        if lead != 1:
            raise ValueError("point is not normalized (first nonzero coordinate must be 1)")

    @classmethod
    def normalize(cls, coords, q: int) -> "ProjPoint":
        coords = [int(c) % q for c in coords]
        lead = next((c for c in coords if c), 0)
        if not lead:
            raise ValueError("the zero vector is not a projective point")
        inv = pow(lead, -1, q)
        return cls(tuple(c * inv % q for c in coords), q)


def evaluate_at_point(M: PolyMatrix, p: ProjPoint) -> List[List[int]]:
    f = M.ring.field
    if f.q is None:
        raise ValueError("cannot evaluate a rational matrix at a finite-field point; reduce it first")
    if f.q != p.q:
        raise ValueError(f"point over F_{p.q} but matrix over {f}")
    if len(p.coords) != M.ring.nvars:
        raise ValueError("point dimension does not match the ring")
    return M.evaluate(p.coords)


# -- exact scalar linear algebra ----------------------------------------------

def rank_mod(mat, q: int) -> int:
    """Rank over F_q by plain elimination."""
    M = [[int(x) % q for x in r] for r in mat]
    if not M or not M[0]:
        return 0
    R, C = len(M), len(M[0])
    rank = 0
    for j in range(C):
        piv = next((i for i in range(rank, R) if M[i][j]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][j], -1, q)
        M[rank] = [x * inv % q for x in M[rank]]
        for i in range(rank + 1, R):
            f = M[i][j]
            if f:
                M[i] = [(a - f * b) % q for a, b in zip(M[i], M[rank])]
        rank += 1
        if rank == R:
            break
    return rank


def rank_fraction_free(mat) -> int:
    """Rank over Q by Bareiss elimination on an integer-scaled copy."""
    rows = [[x if isinstance(x, Fraction) else Fraction(int(x)) for x in r] for r in mat]
    if not rows or not rows[0]:
        return 0
    M = []
    for r in rows:
        den = 1
        for x in r:
            den = den * x.denominator // _gcd(den, x.denominator)
        M.append([int(x * den) for x in r])
    R, C = len(M), len(M[0])
    rank, prev = 0, 1
    for j in range(C):
        piv = next((i for i in range(rank, R) if M[i][j]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][j]
        for i in range(rank + 1, R):
            for c in range(j + 1, C):
                M[i][c] = (p * M[i][c] - M[i][j] * M[rank][c]) // prev
            M[i][j] = 0
        prev = p
        rank += 1
        if rank == R:
            break
    return rank


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def rank_over_field(mat, field: FieldSpec) -> int:
    if field.q is not None:
        return rank_mod(mat, field.q)
    return rank_fraction_free(mat)


def nullspace_mod(mat: np.ndarray, q: int) -> np.ndarray:
    """Basis (as rows) of the right kernel of ``mat`` over F_q."""
    M = np.array(mat, dtype=np.int64) % q
    R, C = M.shape
    pivots = []
    r = 0
    for j in range(C):
        if r == R:
            break
        nz = np.nonzero(M[r:, j])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        M[[r, i]] = M[[i, r]]
        M[r] = M[r] * pow(int(M[r, j]), -1, q) % q
        f = M[:, j].copy()
        f[r] = 0
        M = (M - f[:, None] * M[r][None, :]) % q
        pivots.append(j)
        r += 1
    free = [j for j in range(C) if j not in set(pivots)]
    basis = np.zeros((len(free), C), dtype=np.int64)
    for t, fj in enumerate(free):
        basis[t, fj] = 1
        for row, pj in enumerate(pivots):
            basis[t, pj] = (-M[row, fj]) % q
    return basis


def nullspace_rational(mat) -> List[List[Fraction]]:
    """Basis (as rows) of the right kernel over Q, by Gauss-Jordan on Fractions."""
    # numpy integers inside a Fraction overflow silently, so coerce first
    M = [[x if isinstance(x, Fraction) else Fraction(int(x)) for x in r] for r in mat]
    R = len(M)
    C = len(M[0]) if M else 0
    pivots = []
    r = 0
    for j in range(C):
        piv = next((i for i in range(r, R) if M[i][j] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][j]
        M[r] = [x * inv for x in M[r]]
        for i in range(R):
            if i != r and M[i][j] != 0:
                f = M[i][j]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(j)
        r += 1
        if r == R:
            break
    piv_set = set(pivots)
    basis = []
    for fj in (j for j in range(C) if j not in piv_set):
        v = [Fraction(0)] * C
        v[fj] = Fraction(1)
        for row, pj in enumerate(pivots):
            v[pj] = -M[row][fj]
        basis.append(v)
    return basis
