"""Checks on monad instances: exact complex condition, pointwise rank
conditions over prime fields, and point-count estimates of degeneracy loci.

Point counts are evidence over the tested fields, not proofs over the
algebraic closure; reports say which one they carry.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import kernels
from .construct import MonadInstance, build_base_complex
from .field import FieldSpec
from .matrix import PolyMatrix, ProjPoint, rank_fraction_free, rank_mod
from .points import num_projective_points, projective_points

log = logging.getLogger(__name__)

DEFAULT_PRIMES = (3, 5, 7, 11)
DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class StratumCount:
    """Number of points of P^dim(F_q) where the rank is at most full_rank - d."""

    d: int
    q: int
    count: int

    def to_json(self):
        return {"d": self.d, "q": self.q, "count": self.count}


@dataclass(frozen=True)
class CodimEstimate:
    d: int
    status: str  # empty_over_tested_fields | estimated | inconclusive
    codim: Optional[int] = None
    evidence: tuple = ()

    def to_json(self):
        return {"d": self.d, "status": self.status, "codim": self.codim,
                "evidence": [c.to_json() for c in self.evidence]}


@dataclass(frozen=True)
class BetaCheck:
    status: str  # certified | evidence | failed
    primes: tuple = ()
    witness: Optional[ProjPoint] = None

    def to_json(self):
        out = {"status": self.status, "primes": list(self.primes)}
        if self.witness is not None:
            out["witness"] = {"q": self.witness.q, "point": list(self.witness.coords)}
        if self.status == "evidence":
            out["caveat"] = "rank checked at every rational point of the tested fields only"
        return out


# -- primitives ---------------------------------------------------------------

def _reduced(M: PolyMatrix, q: int) -> Optional[np.ndarray]:
    try:
        return M.linear_tensor(q)
    except ZeroDivisionError:
        log.warning("skipping prime %d: it divides a denominator", q)
        return None


def _check_budget(k: int, q: int, budget: int):
    n = num_projective_points(k, q)
    if n > budget:
        raise BudgetExceeded(f"P^{k}(F_{q}) has {n} points, above the budget of {budget} rank evaluations; "
                             f"use a smaller q or k")


def ranks_over_points(M: PolyMatrix, q: int, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Rank of M at every point of P^k(F_q), in enumeration order."""
    k = M.ring.nvars - 1
    _check_budget(k, q, budget)
    coeffs = M.linear_tensor(q)
    return kernels.ranks_at_points(coeffs, projective_points(k, q), q)


def generic_rank(M: PolyMatrix, trials: int = 64, seed: int = 0, bound: int = 10) -> int:
    """Max rank over random points: a lower bound for the rank at a general point.

    Over F_q the points are uniform nonzero vectors; over Q they are integer
    vectors with entries in [-bound, bound] and ranks are exact.
    """
    full = min(M.shape)
    if full == 0:
        return 0
    rng = np.random.default_rng(seed)
    V = M.ring.nvars
    q = M.ring.field.q
    if q is not None and M.is_linear():
        pts = rng.integers(0, q, size=(trials, V))
        pts = pts[pts.any(axis=1)]
        if pts.shape[0] == 0:
            return 0
        return int(kernels.ranks_at_points(M.linear_tensor(), pts, q).max())
    best = 0
    for _ in range(trials):
        if q is not None:
            pt = [int(x) for x in rng.integers(0, q, size=V)]
            rk = rank_mod(M.evaluate(pt), q)
        else:
            pt = [int(x) for x in rng.integers(-bound, bound + 1, size=V)]
            rk = rank_fraction_free(M.evaluate(pt))
        best = max(best, rk)
        if best == full:
            break
    return best


def strata_counts(M: PolyMatrix, q: int, full: int = None, budget: int = DEFAULT_BUDGET) -> List[StratumCount]:
    """Counts of points with rank <= full - d, for d = 1 .. full (full defaults to min(rows, cols))."""
    full = min(M.shape) if full is None else full
    k = M.ring.nvars - 1
    if min(M.shape) == 0:
        _check_budget(k, q, budget)
        ranks = np.zeros(num_projective_points(k, q), dtype=np.int64)
    else:
        ranks = ranks_over_points(M, q, budget)
    return [StratumCount(d, q, int(np.count_nonzero(ranks <= full - d))) for d in range(1, max(full, 1) + 1)]


def floor_log(count: int, q: int) -> int:
    e, p = 0, q
    while p <= count:
        e += 1
        p *= q
    return e


def estimate_codimension(counts: Sequence[StratumCount], ambient_dim: int) -> CodimEstimate:
    """Codimension of one stratum from its point counts over several primes.

    All zero -> empty over the tested fields. Otherwise floor(log_q count)
    on the two largest primes must agree, giving codim = ambient_dim - that.
    """
    counts = sorted(counts, key=lambda c: c.q)
    d = counts[0].d if counts else 0
    ev = tuple(counts)
    if all(c.count == 0 for c in counts):
        return CodimEstimate(d, "empty_over_tested_fields", None, ev)
    top = counts[-2:]
    if len(top) < 2 or any(c.count == 0 for c in top):
        return CodimEstimate(d, "inconclusive", None, ev)
    e1, e2 = (floor_log(c.count, c.q) for c in top)
    if e1 != e2:
        return CodimEstimate(d, "inconclusive", None, ev)
    return CodimEstimate(d, "estimated", max(0, min(ambient_dim, ambient_dim - e1)), ev)


# -- monad checks -------------------------------------------------------------

def check_complex(M: MonadInstance) -> bool:
    return (M.B @ M.A).is_zero()


def _test_primes(M: MonadInstance, primes: Sequence[int]) -> List[int]:
    if M.field.q is not None:
        return [M.field.q]
    return sorted(set(int(p) for p in primes))


def check_beta_surjective(M: MonadInstance, primes: Sequence[int] = DEFAULT_PRIMES,
                          budget: int = DEFAULT_BUDGET, use_certificate: bool = True) -> BetaCheck:
    if use_certificate and M.certified_beta_surjective:
        return BetaCheck("certified")
    c, k = M.shape.c, M.shape.k
    tested = []
    for q in _test_primes(M, primes):
        if c == 0:
            tested.append(q)
            continue
        coeffs = _reduced(M.B, q)
        if coeffs is None:
            continue
        _check_budget(k, q, budget)
        pts = projective_points(k, q)
        bad = kernels.first_rank_failure(coeffs, pts, q, c)
        if bad >= 0:
            return BetaCheck("failed", tuple(tested + [q]), ProjPoint(tuple(int(x) for x in pts[bad]), q))
        tested.append(q)
    return BetaCheck("evidence", tuple(tested))


def alpha_degeneracy(M: MonadInstance, primes: Sequence[int] = DEFAULT_PRIMES,
                     budget: int = DEFAULT_BUDGET) -> CodimEstimate:
    """Estimate for the locus where alpha has rank < a."""
    counts = []
    for q in _test_primes(M, primes):
        A = M.A if M.field.q is not None else None
        if A is None:
            try:
                A = M.A.reduce_mod(q)
            except ZeroDivisionError:
                log.warning("skipping prime %d: it divides a denominator", q)
                continue
            if generic_rank(A, seed=q) < M.shape.a:
                # every sampled point degenerates (bad reduction, or too few F_q points): no information
                log.info("skipping prime %d: alpha mod %d drops rank at every sampled point", q, q)
                continue
        counts.append(strata_counts(A, q, full=M.shape.a, budget=budget)[0])
    return estimate_codimension(counts, M.shape.k)


@dataclass
class VerificationReport:
    shape: tuple
    field: str
    is_complex: bool
    beta_surjective: BetaCheck
    alpha_generic_rank: int
    beta_generic_rank: int
    cohomology_generic_rank: int
    alpha_degeneracy: CodimEstimate
    expected_codim: int
    primes: tuple = ()

    @property
    def is_monad(self) -> bool:
        return (self.is_complex and self.beta_surjective.status != "failed"
                and self.alpha_generic_rank == self.shape[0])

    def to_json(self):
        return {
            "shape": dict(zip("abck", self.shape)),
            "field": self.field,
            "primes": list(self.primes),
            "is_complex": self.is_complex,
            "beta_surjective": self.beta_surjective.to_json(),
            "alpha_generic_rank": self.alpha_generic_rank,
            "beta_generic_rank": self.beta_generic_rank,
            "cohomology_generic_rank": self.cohomology_generic_rank,
            "alpha_degeneracy": self.alpha_degeneracy.to_json(),
            "expected_codim": self.expected_codim,
            "is_monad": self.is_monad,
        }


def verify_monad(M: MonadInstance, primes: Sequence[int] = DEFAULT_PRIMES, trials: int = 64, seed: int = 0,
                 budget: int = DEFAULT_BUDGET) -> VerificationReport:
    rk_a = generic_rank(M.A, trials, seed)
    rk_b = generic_rank(M.B, trials, seed + 1)
    return VerificationReport(
        shape=M.shape.as_tuple(),
        field=str(M.field),
        is_complex=check_complex(M),
        beta_surjective=check_beta_surjective(M, primes, budget),
        alpha_generic_rank=rk_a,
        beta_generic_rank=rk_b,
        cohomology_generic_rank=M.shape.b - rk_a - rk_b,
        alpha_degeneracy=alpha_degeneracy(M, primes, budget),
        expected_codim=M.shape.expected_codim,
        primes=tuple(_test_primes(M, primes)),
    )


# -- strata of the base complex -----------------------------------------------

@dataclass
class Lemma2Report:
    r: int
    n: int
    m: int
    primes: tuple
    counts: Dict[int, List[int]]  # q -> [#rank <= full-d for d = 0..full]
    item1_ok: bool
    item2: Optional[dict]
    item3: List[dict] = dc_field(default_factory=list)

    @property
    def inconclusive(self) -> List[int]:
        out = [e["d"] for e in self.item3 if e["ok"] is None]
        if self.item2 and self.item2["ok"] is None:
            out.append(self.item2["d"])
        return sorted(set(out))

    @property
    def ok(self) -> bool:
        checks = [self.item1_ok] + [e["ok"] for e in self.item3]
        if self.item2:
            checks.append(self.item2["ok"])
        return all(c is True for c in checks)

    def to_json(self):
        return {
            "r": self.r, "n": self.n, "m": self.m, "ambient_dim": self.n + self.m + 1,
            "primes": list(self.primes),
            "cumulative_counts": {str(q): v for q, v in sorted(self.counts.items())},
            "item1_ok": self.item1_ok,
            "item2": self.item2,
            "item3": self.item3,
            "inconclusive": self.inconclusive,
            "ok": self.ok,
        }


def verify_lemma2(r: int, n: int, m: int, primes: Sequence[int] = DEFAULT_PRIMES,
                  budget: int = DEFAULT_BUDGET) -> Lemma2Report:
    """Rank-drop strata Z_d of A from the base complex, checked against their predicted codimensions.

    Z_d is empty for d > max(n, m); for min(n, m) < d < max(n, m) the exact
    stratum is empty and Z_max(n,m) has codimension min(n, m) + 1; for
    d <= min(n, m) + 1 the codimension is at least d.
    """
    M = build_base_complex(r, n, m)
    full = r + n + m
    N = n + m + 1
    lo, hi = min(n, m), max(n, m)
    primes = tuple(sorted(set(primes)))
    cum: Dict[int, List[int]] = {}
    for q in primes:
        ranks = ranks_over_points(M.A.reduce_mod(q), q, budget)
        cum[q] = [int(np.count_nonzero(ranks <= full - d)) for d in range(full + 1)]

    def at(d, q):
        return cum[q][d] if d <= full else 0

    def est(d):
        return estimate_codimension([StratumCount(d, q, at(d, q)) for q in primes], N)

    item1 = all(at(d, q) == 0 for q in primes for d in range(hi + 1, full + 1))
    item2 = None
    if lo < hi:
        between_empty = all(at(d, q) - at(d + 1, q) == 0 for q in primes for d in range(lo + 1, hi))
        e = est(hi)
        ok = None if e.status == "inconclusive" else (between_empty and e.status == "estimated" and e.codim == lo + 1)
        if not between_empty:
            ok = False
        item2 = {"d": hi, "expected_codim": lo + 1, "between_empty": between_empty,
                 "estimate": e.to_json(), "ok": ok}
    item3 = []
    for d in range(1, lo + 2):
        e = est(d)
        if e.status == "inconclusive":
            ok = None
        else:
            ok = e.status == "empty_over_tested_fields" or e.codim >= d
        item3.append({"d": d, "bound": d, "estimate": e.to_json(), "ok": ok})
    return Lemma2Report(r, n, m, primes, cum, item1, item2, item3)
