"""Explicit linear monads from banded convolution matrices.

The base complex on P^N (N = n+m+1, coordinates x_0..x_n, y_0..y_m)

    O(-1)^(r+n+m) --A--> O^(2r+n+m) --B--> O(1)^r

has B = [X_{r,r+n} | Y_{r,r+m}] and A = [Y_{r+n,r+n+m}; -X_{r+m,r+m+n}], where
X and Y are banded matrices whose rows are shifted copies of (x_0..x_n) and
(y_0..y_m). Both products X*Y and Y*X are the banded matrix of the
coefficients of x(t)*y(t), so B*A = 0. Every admissible shape is reached from
it by composing A with a general injection, restricting to a general linear
subspace P^k, and (for the second family) dualizing.
"""

from __future__ import annotations

import copy
import logging
from dataclasses import dataclass, field as dc_field, replace
from typing import List, Optional

import numpy as np

from .field import FieldSpec
from .matrix import PolyMatrix, hstack, rank_over_field, vstack
from .poly import PolyRing

log = logging.getLogger(__name__)

DEFAULT_RETRIES = 32
DEFAULT_BOUND = 10


class ConstructionError(RuntimeError):
    pass


@dataclass(frozen=True)
class MonadShape:
    """O(-1)^a -> O^b -> O(1)^c on P^k."""

    a: int
    b: int
    c: int
    k: int

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 0 or self.k < 1:
            raise ValueError(f"invalid shape {self}")

    @property
    def expected_codim(self) -> int:
        return self.b - self.a - self.c + 1

    @property
    def well_posed(self) -> bool:
        return self.a + self.c <= self.b

    def dual(self) -> "MonadShape":
        return MonadShape(self.c, self.b, self.a, self.k)

    def as_tuple(self):
        return (self.a, self.b, self.c, self.k)


@dataclass
class MonadInstance:
    shape: MonadShape
    field: FieldSpec
    A: PolyMatrix
    B: PolyMatrix
    provenance: List[dict] = dc_field(default_factory=list)
    certified_beta_surjective: bool = False

    def __post_init__(self):
        a, b, c, k = self.shape.as_tuple()
        if self.A.shape != (b, a) or self.B.shape != (c, b):
            raise ValueError(f"matrix shapes {self.A.shape}, {self.B.shape} do not fit {self.shape}")
        if self.A.ring != self.B.ring or self.A.ring.nvars != k + 1 or self.A.ring.field != self.field:
            raise ValueError("A and B must live in one ring with k+1 variables over the instance field")
        if not (self.A.is_linear() and self.B.is_linear()):
            raise ValueError("monad matrices must have homogeneous linear entries")

    @property
    def ring(self) -> PolyRing:
        return self.A.ring

    def reduce_mod(self, q: int) -> "MonadInstance":
        return MonadInstance(self.shape, FieldSpec.prime(q), self.A.reduce_mod(q), self.B.reduce_mod(q),
                             copy.deepcopy(self.provenance), self.certified_beta_surjective)


# -- random constant matrices -----------------------------------------------

def _random_matrix(rng: np.random.Generator, field: FieldSpec, rows: int, cols: int, bound: int):
    if field.q is not None:
        vals = rng.integers(0, field.q, size=(rows, cols))
    else:
        vals = rng.integers(-bound, bound + 1, size=(rows, cols))
    return [[int(v) for v in r] for r in vals]


def random_full_rank(rng, field: FieldSpec, rows: int, cols: int, bound: int = DEFAULT_BOUND,
                     retries: int = DEFAULT_RETRIES, what: str = "matrix"):
    target = min(rows, cols)
    for _ in range(retries):
        mat = _random_matrix(rng, field, rows, cols, bound)
        if rank_over_field(mat, field) == target:
            return mat
    raise ConstructionError(f"no full-rank {rows}x{cols} {what} over {field} after {retries} draws; field too small?")


def _fmt_matrix(field: FieldSpec, mat):
    return [[field.format(field.elem(x)) for x in r] for r in mat]


# -- banded matrices ----------------------------------------------------------

def build_banded(ring: PolyRing, r: int, width: int, offset: int = 0) -> PolyMatrix:
    """r x (r+width) matrix whose row i holds var_offset..var_{offset+width} in columns i..i+width."""
    if offset + width >= ring.nvars:
        raise ValueError("variable block exceeds the ring")
    z = ring.zero()
    ents = []
    for i in range(r):
        row = [z] * (r + width)
        for t in range(width + 1):
            row[i + t] = ring.var(offset + t)
        ents.append(row)
    return PolyMatrix(ring, ents, r, r + width, [0] * r, [1] * (r + width))


def x_block(ring: PolyRing, n: int, r: int) -> PolyMatrix:
    return build_banded(ring, r, n, 0)


def y_block(ring: PolyRing, n: int, m: int, r: int) -> PolyMatrix:
    return build_banded(ring, r, m, n + 1)


def sigma_forms(ring: PolyRing, n: int, m: int):
    xs = [ring.var(i) for i in range(n + 1)]
    ys = [ring.var(n + 1 + j) for j in range(m + 1)]
    out = []
    for kk in range(n + m + 1):
        acc = ring.zero()
        for i in range(max(0, kk - m), min(n, kk) + 1):
            acc = acc + xs[i] * ys[kk - i]
        out.append(acc)
    return out


def build_sigma(r: int, n: int, m: int, field: FieldSpec = None, ring: PolyRing = None) -> PolyMatrix:
    """Banded r x (r+n+m) matrix of the quadrics sigma_k = sum_{i+j=k} x_i y_j."""
    ring = ring or PolyRing.xy(field or FieldSpec.rational(), n, m)
    sig = sigma_forms(ring, n, m)
    z = ring.zero()
    ents = []
    for i in range(r):
        row = [z] * (r + n + m)
        for t, s in enumerate(sig):
            row[i + t] = s
        ents.append(row)
    return PolyMatrix(ring, ents, r, r + n + m, [0] * r, [2] * (r + n + m))


def _retwist(M: PolyMatrix, row_twist: int, col_twist: int) -> PolyMatrix:
    return PolyMatrix(M.ring, M.entries, M.nrows, M.ncols, [row_twist] * M.nrows, [col_twist] * M.ncols)


def build_base_complex(r: int, n: int, m: int, field: FieldSpec = None) -> MonadInstance:
    """The complex on P^(n+m+1); ``r = 0`` is allowed and gives B with no rows."""
    if r < 0 or n < 0 or m < 0:
        raise ValueError("r, n, m must be non-negative")
    field = field or FieldSpec.rational()
    ring = PolyRing.xy(field, n, m)
    X_top = _retwist(x_block(ring, n, r), -1, 0)
    Y_top = _retwist(y_block(ring, n, m, r), -1, 0)
    B = hstack([X_top, Y_top]) if r else PolyMatrix.zeros(ring, 0, n + m, [], [0] * (n + m))
    Y_low = _retwist(y_block(ring, n, m, r + n), 0, 1)
    X_low = _retwist(-x_block(ring, n, r + m), 0, 1)
    A = vstack([Y_low, X_low])
    shape = MonadShape(r + n + m, 2 * r + n + m, r, n + m + 1)
    return MonadInstance(shape, field, A, B, [{"step": "base", "r": r, "n": n, "m": m}], True)


# -- operations on instances --------------------------------------------------

def compose_general_injection(M: MonadInstance, s: int, rng: np.random.Generator, phi=None,
                              bound: int = DEFAULT_BOUND, retries: int = DEFAULT_RETRIES) -> MonadInstance:
    """Replace A by A*Phi for a general constant a x (a-s) matrix Phi of full column rank."""
    a = M.shape.a
    if not 0 <= s <= a:
        raise ValueError(f"s must lie in [0, {a}]")
    if phi is None:
        phi = random_full_rank(rng, M.field, a, a - s, bound, retries, "injection")
    elif rank_over_field(phi, M.field) != a - s:
        raise ValueError("supplied injection does not have full column rank")
    Phi = PolyMatrix.from_scalars(M.ring, phi, a, a - s, M.A.col_twists, [1] * (a - s))
    A = M.A @ Phi
    shape = replace(M.shape, a=a - s)
    log = M.provenance + [{"step": "compose", "s": s, "phi": _fmt_matrix(M.field, phi)}]
    return MonadInstance(shape, M.field, A, M.B, log, M.certified_beta_surjective)


def restrict_to_subspace(M: MonadInstance, k: int, rng: np.random.Generator, substitution=None,
                         bound: int = DEFAULT_BOUND, retries: int = DEFAULT_RETRIES) -> MonadInstance:
    """Pull back along a general linear embedding P^k -> P^N.

    Variable i becomes sum_j S[i][j] z_j with S an (N+1) x (k+1) matrix of rank k+1.
    """
    N = M.shape.k
    if not 1 <= k <= N:
        raise ValueError(f"k must lie in [1, {N}]")
    if substitution is None:
        substitution = random_full_rank(rng, M.field, N + 1, k + 1, bound, retries, "substitution")
    elif len(substitution) != N + 1 or rank_over_field(substitution, M.field) != k + 1:
        raise ValueError("substitution must be an (N+1) x (k+1) matrix of rank k+1")
    ring = PolyRing.z(M.field, k)
    images = [ring.linear_form(row) for row in substitution]
    A = M.A.substitute_linear(images) if M.A.nrows and M.A.ncols else PolyMatrix.zeros(
        ring, M.A.nrows, M.A.ncols, M.A.row_twists, M.A.col_twists)
    B = M.B.substitute_linear(images) if M.B.nrows and M.B.ncols else PolyMatrix.zeros(
        ring, M.B.nrows, M.B.ncols, M.B.row_twists, M.B.col_twists)
    log = M.provenance + [{"step": "restrict", "k": k, "substitution": _fmt_matrix(M.field, substitution)}]
    # an embedding pulls back an empty degeneracy locus to an empty one
    return MonadInstance(replace(M.shape, k=k), M.field, A, B, log, M.certified_beta_surjective)


def rename_to_z(M: MonadInstance) -> MonadInstance:
    ring = PolyRing.z(M.field, M.shape.k)
    return MonadInstance(M.shape, M.field, M.A.rename(ring), M.B.rename(ring),
                         M.provenance + [{"step": "rename"}], M.certified_beta_surjective)


def dualize(M: MonadInstance) -> MonadInstance:
    """Transpose both maps: the dual monad O(-1)^c -> O^b -> O(1)^a."""
    log = M.provenance + [{"step": "dualize"}]
    return MonadInstance(M.shape.dual(), M.field, M.B.T, M.A.T, log, False)


# -- existence proof, made constructive --------------------------------------

def split_middle(b: int, c: int):
    """(n, m) with n + m = b - 2c and |n - m| <= 1."""
    t = b - 2 * c
    return (t + 1) // 2, t // 2


REDUCTION_PRIMES = (3, 5, 7, 11)


def _alpha_full_rank_everywhere(M: MonadInstance) -> bool:
    """Rank a at every F_q point; rational instances are tested mod REDUCTION_PRIMES."""
    from . import kernels
    from .points import projective_points

    primes = (M.field.q,) if M.field.q is not None else REDUCTION_PRIMES
    for q in primes:
        try:
            coeffs = M.A.linear_tensor(q)
        except ZeroDivisionError:
            return False
        if kernels.first_rank_failure(coeffs, projective_points(M.shape.k, q), q, M.shape.a) >= 0:
            return False
    return True


def _condition_one_instance(shape: MonadShape, field: FieldSpec, rng, bound, retries,
                            nondegenerate: bool = False) -> MonadInstance:
    """Retries until alpha has generic rank a.

    With nondegenerate set it also asks for rank a at every F_q point (for
    rational data: after reduction mod each of REDUCTION_PRIMES). Over Q this
    only screens out bad reduction, so when no draw passes the last generic
    one is kept.
    """
    from .verify import generic_rank

    a, b, c, k = shape.as_tuple()
    n, m = split_middle(b, c)
    base = build_base_complex(c, n, m, field)
    s = base.shape.a - a
    fallback = None
    for _ in range(retries):
        M = compose_general_injection(base, s, rng, bound=bound, retries=retries)
        if k == base.shape.k:
            M = rename_to_z(M)
        else:
            M = restrict_to_subspace(M, k, rng, bound=bound, retries=retries)
        if generic_rank(M.A, trials=64, seed=int(rng.integers(2**31))) != a:
            continue
        if nondegenerate and a and not _alpha_full_rank_everywhere(M):
            fallback = fallback or M
            continue
        return M
    if fallback is not None and field.q is None:
        log.warning("no draw of shape %s had good reduction at %s", shape.as_tuple(), REDUCTION_PRIMES)
        return fallback
    raise ConstructionError(f"alpha stayed rank-deficient over {field} after {retries} draws")


def construct_monad(shape: MonadShape, field: FieldSpec = None, seed: int = 0,
                    bound: int = DEFAULT_BOUND, retries: int = DEFAULT_RETRIES) -> MonadInstance:
    """A monad of the given shape on P^k, following the existence proof.

    Condition 1 shapes come straight from the base complex with r = c and
    n + m = b - 2c; shapes satisfying only condition 2 are built as the dual
    of a condition 1 monad of shape (c, b, a, k).
    """
    from .classify import decide

    field = field or FieldSpec.rational()
    dec = decide(shape)
    if not dec.exists:
        raise ConstructionError(f"no monad of shape {shape.as_tuple()} exists")
    rng = np.random.default_rng(seed)
    head = {"step": "construct", "seed": seed, "shape": list(shape.as_tuple()), "field": str(field)}
    if dec.condition_1:
        M = _condition_one_instance(shape, field, rng, bound, retries, shape.expected_codim > shape.k)
        head["route"] = "condition_1"
    else:
        # beta of the dual is the transpose of this alpha, so it must not degenerate
        M = dualize(_condition_one_instance(shape.dual(), field, rng, bound, retries, True))
        head["route"] = "condition_2"
    M.provenance.insert(0, head)
    return M
