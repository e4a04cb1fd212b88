"""Chern classes of the cohomology of a complex of line bundles on P^k.

If a complex of sums of line bundles is exact away from degree 0, the class
of its cohomology E in K-theory is sum_j (-1)^j [F^j], so

    c(E) = prod_j (1 + t_j h)^((-1)^j * rank_j)      (mod h^(k+1))

where O(t_j)^rank_j sits in degree j and h is the hyperplane class.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .series import TruncatedSeries, series_power

DEFAULT_M_RANGE = (-3, 15)
DEFAULT_N_RANGE = (-3, 30)


@dataclass(frozen=True)
class ComplexTerm:
    degree: int
    twist: int
    rank: int


@dataclass(frozen=True)
class ComplexSpec:
    dim: int
    terms: Tuple[ComplexTerm, ...]

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")


@dataclass(frozen=True)
class ChernVector:
    dim: int
    c: Tuple[Fraction, ...]
    rank: int

    def __getitem__(self, i):
        return self.c[i]

    def as_ints(self) -> List[int]:
        if any(x.denominator != 1 for x in self.c):
            raise ValueError("non-integral Chern class")
        return [int(x) for x in self.c]

    def to_json(self):
        return {"dim": self.dim, "rank": self.rank, "c": [str(x) for x in self.c]}


def chern_of_complex(spec: ComplexSpec, signed: bool = False) -> ChernVector:
    """Total Chern class of the degree-0 cohomology, truncated at h^dim.

    With ``signed=True`` negative ranks are accepted and read as the summand
    moved one step across an arrow (same contribution, opposite parity).
    """
    cap = spec.dim
    total = TruncatedSeries.one(cap)
    rank = 0
    for t in spec.terms:
        if t.rank < 0 and not signed:
            raise ValueError(f"negative rank in {t}")
        sign = -1 if t.degree % 2 else 1
        rank += sign * t.rank
        if t.rank and t.twist:
            total = total * series_power(TruncatedSeries.linear(t.twist, cap), sign * t.rank)
    return ChernVector(cap, total.coeffs, rank)


@dataclass(frozen=True)
class F2Params:
    r: int
    m: int
    n: int

    def ranks(self) -> Tuple[int, int, int, int]:
        r, m, n = self.r, self.m, self.n
        return (n + r - 1, 2 * n + m + r + 1, n + 2 * m, m)


def f2_complex_spec(p: F2Params, dim: int = 4, signed: bool = False) -> ComplexSpec:
    """0 -> O(-1)^(n+r-1) -> O^(2n+m+r+1) -> O(1)^(n+2m) -> O(2)^m -> 0 in degrees -1..2."""
    ranks = p.ranks()
    if not signed and min(ranks) < 0:
        raise ValueError(f"parameters {p} give a negative rank: {ranks}")
    return ComplexSpec(dim, tuple(ComplexTerm(d, d, rk) for d, rk in zip((-1, 0, 1, 2), ranks)))


def solve_rank2_constraints(r: int, m_range: Sequence[int] = DEFAULT_M_RANGE,
                            n_range: Sequence[int] = DEFAULT_N_RANGE, dim: int = 4) -> List[Tuple[int, int]]:
    """All (m, n) in the closed ranges with c_3(E) = c_4(E) = 0 on P^dim, sorted."""
    out = []
    for m in range(m_range[0], m_range[1] + 1):
        for n in range(n_range[0], n_range[1] + 1):
            cv = chern_of_complex(f2_complex_spec(F2Params(r, m, n), dim, signed=True), signed=True)
            if all(cv[i] == 0 for i in range(3, dim + 1)):
                out.append((m, n))
    return sorted(out)
