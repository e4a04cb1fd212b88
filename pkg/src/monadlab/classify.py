"""Existence of linear monads: the numerical criterion, plus randomized
searches that look for witnesses directly.

A monad O(-1)^a -> O^b -> O(1)^c on P^k exists iff

    (1) b >= 2c + k - 1 and b >= a + c,   or   (2) b >= a + c + k.

The searches never prove non-existence; they collect evidence. A witness
found for a shape the criterion rules out is a hard error.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, gcd
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import kernels
from .construct import MonadInstance, MonadShape
from .field import FieldSpec
from .matrix import PolyMatrix, nullspace_mod, nullspace_rational
from .poly import PolyRing
from .points import projective_points
from .verify import (BudgetExceeded, CodimEstimate, DEFAULT_BUDGET, _check_budget, check_complex,
                     estimate_codimension, generic_rank, strata_counts, verify_monad)

log = logging.getLogger(__name__)


class TheoremViolation(RuntimeError):
    """A verified witness for a shape the existence criterion excludes."""

    def __init__(self, report):
        super().__init__(f"verified monad found for excluded shape {report.shape.as_tuple()}; "
                         f"see report (seed={report.seed}, q={report.q})")
        self.report = report


@dataclass(frozen=True)
class Decision:
    exists: bool
    condition_1: bool
    condition_2: bool
    expected_codim: int

    def to_json(self):
        return {"exists": self.exists, "condition_1": self.condition_1,
                "condition_2": self.condition_2, "expected_codim": self.expected_codim}


def decide(shape: MonadShape) -> Decision:
    a, b, c, k = shape.as_tuple()
    if k < 1:
        raise ValueError("k must be >= 1")
    c1 = b >= 2 * c + k - 1 and b >= a + c
    c2 = b >= a + c + k
    return Decision(c1 or c2, c1, c2, b - a - c + 1)


# -- the linear system B*A = 0 -------------------------------------------------

def syzygy_system(B: np.ndarray) -> np.ndarray:
    """Matrix of the linear conditions on one column of A imposed by B*A = 0.

    ``B`` is a (c, b, V) coefficient tensor. A column of A is a vector of b
    linear forms, flattened as u[l*V + v]. Row (i, {v1, v2}) is the
    coefficient of z_v1 z_v2 in entry i of B*u.
    """
    c, b, V = B.shape
    monos = list(combinations_with_replacement(range(V), 2))
    E = np.zeros((c * len(monos), b * V), dtype=object)
    for i in range(c):
        for t, (v1, v2) in enumerate(monos):
            row = i * len(monos) + t
            for l in range(b):
                E[row, l * V + v2] += B[i, l, v1]
                if v1 != v2:
                    E[row, l * V + v1] += B[i, l, v2]
    return E


def _columns_to_tensor(cols: np.ndarray, b: int, V: int) -> np.ndarray:
    """(a, b*V) column vectors -> (b, a, V) coefficient tensor of A."""
    a = cols.shape[0]
    return np.ascontiguousarray(cols.reshape(a, b, V).transpose(1, 0, 2))


def _instance(shape: MonadShape, field: FieldSpec, A: np.ndarray, B: np.ndarray, log_entry) -> MonadInstance:
    a, b, c, k = shape.as_tuple()
    ring = PolyRing.z(field, k)
    Am = PolyMatrix.from_linear_tensor(ring, A, [0] * b, [1] * a) if a else PolyMatrix.zeros(ring, b, 0, [0] * b, [])
    Bm = PolyMatrix.from_linear_tensor(ring, B, [-1] * c, [0] * b) if c else PolyMatrix.zeros(ring, 0, b, [], [0] * b)
    return MonadInstance(shape, field, Am, Bm, [log_entry])


@dataclass
class SearchReport:
    shape: MonadShape
    q: int
    trials: int
    seed: int
    witnesses: List[MonadInstance] = dc_field(default_factory=list)
    rejection_stats: Dict[str, int] = dc_field(default_factory=dict)
    accepted: int = 0
    trials_run: int = 0
    decision: Optional[Decision] = None
    extra: dict = dc_field(default_factory=dict)

    def reject(self, why: str):
        self.rejection_stats[why] = self.rejection_stats.get(why, 0) + 1


def _trial_rng(seed: int, t: int) -> np.random.Generator:
    return np.random.default_rng([seed, t])


def witness_search(shape: MonadShape, q: int, trials: int, seed: int = 0, max_witnesses: int = 1,
                   rank_trials: int = 64, budget: int = DEFAULT_BUDGET) -> SearchReport:
    """Random B with linear entries over F_q, then A sampled from the solutions of B*A = 0.

    Trial t draws from its own generator seeded by (seed, t), so results do
    not depend on execution order. Stops after ``max_witnesses`` witnesses.
    """
    a, b, c, k = shape.as_tuple()
    V = k + 1
    field = FieldSpec.prime(q)
    _check_budget(k, q, budget)
    pts = projective_points(k, q)
    dec = decide(shape)
    rep = SearchReport(shape, q, trials, seed, decision=dec)
    for t in range(trials):
        rep.trials_run = t + 1
        rng = _trial_rng(seed, t)
        B = rng.integers(0, q, size=(c, b, V)).astype(np.int64)
        if c and kernels.first_rank_failure(B, pts, q, c) >= 0:
            rep.reject("beta_not_surjective")
            continue
        if a == 0:
            A = np.zeros((b, 0, V), dtype=np.int64)
        else:
            basis = nullspace_mod(syzygy_system(B).astype(np.int64), q) if c else np.eye(b * V, dtype=np.int64)
            if basis.shape[0] == 0:
                rep.reject("no_linear_syzygy")
                continue
            lam = rng.integers(0, q, size=(a, basis.shape[0]))
            A = _columns_to_tensor(lam @ basis % q, b, V)
        M = _instance(shape, field, A, B, {"step": "witness_search", "seed": seed, "trial": t, "q": q})
        if a and generic_rank(M.A, rank_trials, seed=int(rng.integers(2**31))) < a:
            rep.reject("alpha_not_injective")
            continue
        v = verify_monad(M, [q], trials=rank_trials, seed=t, budget=budget)
        if not v.is_monad:
            rep.reject("verification_failed")
            continue
        rep.accepted += 1
        rep.witnesses.append(M)
        if not dec.exists:
            log.error("witness for excluded shape %s at trial %d", shape.as_tuple(), t)
            raise TheoremViolation(rep)
        if len(rep.witnesses) >= max_witnesses:
            break
    return rep


# -- the codimension-2 complexes ---------------------------------------------

def binom_nonneg(top: int, bottom: int) -> int:
    """Binomial coefficient, 0 when top < bottom (including negative top)."""
    if top < 0 or bottom < 0 or top < bottom:
        return 0
    return comb(top, bottom)


def conjecture_predicate(k: int, r: int, n: int) -> bool:
    return r >= 0 and n <= binom_nonneg(r + 3 - k, 2)


def conjecture_shape(k: int, r: int, n: int) -> MonadShape:
    """O(-2)^n -> O(-1)^(2n+r) -> O^(n+r+1), written dually as O(-1)^(n+r+1) -> O^(2n+r) -> O(1)^n."""
    return MonadShape(n + r + 1, 2 * n + r, n, k)


def _integral(vec: Sequence[Fraction]) -> List[int]:
    den = 1
    for x in vec:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g else ints


def _check_codim2_candidate(M: MonadInstance, q: int, primes: Sequence[int], rank_trials: int, seed: int,
                            budget: int):
    """None if M passes every check, else the name of the first failed check."""
    a, b, c, k = M.shape.as_tuple()
    if not check_complex(M):
        return "not_a_complex", None
    for p in sorted(set(primes) | {q}):
        if c and kernels.first_rank_failure(M.B.linear_tensor(p), projective_points(k, p), p, c) >= 0:
            return "beta_not_surjective", None
    if generic_rank(M.A, rank_trials, seed) != a - 1:
        return "alpha_rank_not_a_minus_1", None
    counts = [strata_counts(M.A.reduce_mod(p), p, full=a - 1, budget=budget)[0] for p in sorted(set(primes))]
    est = estimate_codimension(counts, k)
    if est.status == "inconclusive":
        return "codim_inconclusive", est
    if est.status == "estimated" and est.codim < 2:
        return "codim_below_2", est
    return None, est


def explore_conjecture(k: int, r: int, n: int, q: int = 3, trials: int = 1000, seed: int = 0,
                       primes: Sequence[int] = (3, 5, 7), bound: int = 10, max_witnesses: int = 1,
                       rank_trials: int = 64, budget: int = DEFAULT_BUDGET) -> SearchReport:
    """Search for O(-2)^n -> O(-1)^(2n+r) -> O^(n+r+1) with the first map a
    subbundle and the second map degenerating in codimension >= 2.

    Candidates have integer coefficients so that one candidate can be
    reduced modulo every prime used by the codimension estimate. Checks run
    in the dual orientation: B (n x (2n+r)) must be surjective at every point
    of P^k over F_q and the estimate primes, A must have generic rank n+r,
    and the locus where A drops further must be empty or of codimension >= 2.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if n < 0 or 2 * n + r < 0 or n + r + 1 < 0:
        raise ValueError(f"(r, n) = ({r}, {n}) gives a negative rank")
    shape = conjecture_shape(k, r, n)
    a, b, c, _ = shape.as_tuple()
    V = k + 1
    for p in set(primes) | {q}:
        _check_budget(k, p, budget)
    pred = conjecture_predicate(k, r, n)
    rep = SearchReport(shape, q, trials, seed,
                       extra={"k": k, "r": r, "n": n, "predicate": pred, "primes": sorted(set(primes)),
                              "bound": bound, "estimates": []})
    field = FieldSpec.rational()
    for t in range(trials):
        rep.trials_run = t + 1
        rng = _trial_rng(seed, t)
        B = rng.integers(-bound, bound + 1, size=(c, b, V)).astype(np.int64)
        if c and kernels.first_rank_failure(B % q, projective_points(k, q), q, c) >= 0:
            rep.reject("beta_not_surjective")
            continue
        basis = [_integral(v) for v in nullspace_rational(syzygy_system(B))] if c else \
            [list(r_) for r_ in np.eye(b * V, dtype=np.int64)]
        if len(basis) == 0:
            rep.reject("no_linear_syzygy")
            continue
        lam = rng.integers(-bound, bound + 1, size=(a, len(basis)))
        cols = np.array([[sum(int(l) * int(v[j]) for l, v in zip(row, basis)) for j in range(b * V)]
                         for row in lam], dtype=object)
        A = _columns_to_tensor(cols, b, V)
        M = _instance(shape, field, A, B.astype(object),
                      {"step": "explore_conjecture", "seed": seed, "trial": t, "q": q})
        why, est = _check_codim2_candidate(M, q, primes, rank_trials, int(rng.integers(2**31)), budget)
        if why is not None:
            rep.reject(why)
            continue
        # re-verify from scratch before reporting
        why2, est2 = _check_codim2_candidate(M, q, primes, rank_trials, seed + t, budget)
        if why2 is not None:
            rep.reject("reverification_failed")
            continue
        rep.accepted += 1
        rep.witnesses.append(M)
        rep.extra["estimates"].append(est2.to_json())
        if len(rep.witnesses) >= max_witnesses:
            break
    return rep
