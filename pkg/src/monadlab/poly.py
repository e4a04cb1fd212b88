"""Sparse multivariate polynomials over a FieldSpec.

A polynomial is a dict ``{exponent tuple: nonzero coefficient}``. Terms are
listed in graded lexicographic order (highest first) whenever they are
iterated for output, so printing and hashing are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Sequence, Tuple

from .field import FieldSpec, Scalar

Monomial = Tuple[int, ...]


@dataclass(frozen=True)
class PolyRing:
    field: FieldSpec
    names: Tuple[str, ...]

    @property
    def nvars(self) -> int:
        return len(self.names)

    @classmethod
    def xy(cls, field: FieldSpec, n: int, m: int) -> "PolyRing":
        """K[x_0..x_n, y_0..y_m]."""
        return cls(field, tuple(f"x{i}" for i in range(n + 1)) + tuple(f"y{j}" for j in range(m + 1)))

    @classmethod
    def z(cls, field: FieldSpec, k: int) -> "PolyRing":
        """K[z_0..z_k], the coordinate ring of P^k."""
        return cls(field, tuple(f"z{i}" for i in range(k + 1)))

    def with_field(self, field: FieldSpec) -> "PolyRing":
        return PolyRing(field, self.names)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def const(self, c) -> "Polynomial":
        return Polynomial.from_terms(self, {(0,) * self.nvars: c})

    def var(self, i: int) -> "Polynomial":
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one()})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def linear_form(self, coeffs: Sequence) -> "Polynomial":
        if len(coeffs) != self.nvars:
            raise ValueError("one coefficient per variable expected")
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * self.nvars
            e[i] = 1
            terms[tuple(e)] = c
        return Polynomial.from_terms(self, terms)


def grlex_key(mono: Monomial):
    return (sum(mono), mono)


class Polynomial:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Dict[Monomial, Scalar]):
        # trusted constructor: coefficients already normalized and nonzero
        self.ring = ring
        self.terms = terms
        self._hash = None

    @classmethod
    def from_terms(cls, ring: PolyRing, terms) -> "Polynomial":
        f = ring.field
        out: Dict[Monomial, Scalar] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for mono, c in items:
            mono = tuple(int(e) for e in mono)
            if len(mono) != ring.nvars:
                raise ValueError(f"monomial {mono} has {len(mono)} slots, ring has {ring.nvars} variables")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            c = f.add(out.get(mono, f.zero()), f.elem(c))
            if c == 0:
                out.pop(mono, None)
            else:
                out[mono] = c
        return cls(ring, out)

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def degrees(self) -> set:
        return {sum(m) for m in self.terms}

    def is_homogeneous(self, degree=None) -> bool:
        ds = self.degrees()
        if not ds:
            return True
        return len(ds) == 1 and (degree is None or degree in ds)

    def total_degree(self) -> int:
        return max(self.degrees(), default=-1)

    def linear_coeffs(self):
        """Coefficient vector of a homogeneous linear form (zero allowed)."""
        if not self.is_homogeneous(1):
            raise ValueError(f"{self} is not a linear form")
        out = [self.ring.field.zero()] * self.ring.nvars
        for mono, c in self.terms.items():
            out[mono.index(1)] = c
        return out

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring.names}/{self.ring.field} vs {other.ring.names}/{other.ring.field}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.const(other)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        f = self.ring.field
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = f.add(out.get(mono, f.zero()), c)
            if s == 0:
                out.pop(mono, None)
            else:
                out[mono] = s
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        f = self.ring.field
        return Polynomial(self.ring, {m: f.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        f = self.ring.field
        c = f.elem(c)
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {m: f.mul(a, c) for m, a in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        f = self.ring.field
        out: Dict[Monomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                out[mono] = f.add(out.get(mono, f.zero()), f.mul(c1, c2))
        return Polynomial(self.ring, {m: c for m, c in out.items() if c != 0})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative power")
        out = self.ring.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, tuple(self.sorted_terms())))
        return self._hash

    # -- maps ---------------------------------------------------------------

    def evaluate(self, point: Sequence) -> Scalar:
        f = self.ring.field
        acc = f.zero()
        for mono, c in self.terms.items():
            t = c
            for x, e in zip(point, mono):
                if e:
                    t = f.mul(t, f.elem(x) ** e if f.q is None else pow(int(x), e, f.q))
            acc = f.add(acc, t)
        return acc

    def substitute_linear(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Ring map sending variable i to ``images[i]`` (all in one target ring)."""
        if len(images) != self.ring.nvars:
            raise ValueError("one image per variable expected")
        target = images[0].ring if images else self.ring
        acc = target.zero()
        for mono, c in self.terms.items():
            t = target.const(c)
            for img, e in zip(images, mono):
                if e:
                    t = t * img ** e
            acc = acc + t
        return acc

    def reduce_mod(self, q: int, ring: PolyRing = None) -> "Polynomial":
        ring = ring or self.ring.with_field(FieldSpec.prime(q))
        src = self.ring.field
        return Polynomial.from_terms(ring, {m: src.reduce(c, q) for m, c in self.terms.items()})

    def change_ring(self, ring: PolyRing) -> "Polynomial":
        """Same terms in a ring with the same field and variable count (e.g. renamed variables)."""
        if ring.nvars != self.ring.nvars or ring.field != self.ring.field:
            raise ValueError("incompatible ring")
        return Polynomial(ring, dict(self.terms))

    # -- text ---------------------------------------------------------------

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        f = self.ring.field
        parts = []
        for mono, c in self.sorted_terms():
            vs = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(self.ring.names, mono) if e
            )
            cs = f.format(c)
            if vs and cs == "1":
                parts.append(vs)
            elif vs and cs == "-1":
                parts.append("-" + vs)
            elif vs:
                parts.append(f"{cs}*{vs}")
            else:
                parts.append(cs)
        return " + ".join(parts).replace("+ -", "- ")


def poly_arith(op: str, lhs: Polynomial, rhs) -> Polynomial:
    if op == "add":
        return lhs + rhs
    if op == "mul":
        return lhs * rhs
    if op == "scale":
        return lhs.scale(rhs)
    raise ValueError(f"unknown op {op!r}")


def sum_polys(ring: PolyRing, polys: Iterable[Polynomial]) -> Polynomial:
    acc = ring.zero()
    for p in polys:
        acc = acc + p
    return acc
