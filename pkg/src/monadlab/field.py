"""Ground fields: prime fields F_q and the rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

Scalar = Union[int, Fraction]

MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either F_q (``q`` set) or Q (``q is None``).

    Elements of F_q are plain ints in ``[0, q)``; rationals are ``Fraction``.
    """

    q: Optional[int] = None

    def __post_init__(self):
        if self.q is not None:
            if not isinstance(self.q, int) or not (2 <= self.q < MAX_PRIME) or not is_prime(self.q):
                raise ValueError(f"field characteristic must be a prime below 2^31, got {self.q!r}")

    @classmethod
    def prime(cls, q: int) -> "FieldSpec":
        return cls(int(q))

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls(None)

    @property
    def is_prime_field(self) -> bool:
        return self.q is not None

    def __str__(self) -> str:
        return f"F_{self.q}" if self.q is not None else "Q"

    def elem(self, x) -> Scalar:
        if self.q is not None:
            if isinstance(x, Fraction):
                return (x.numerator % self.q) * pow(x.denominator, -1, self.q) % self.q
            return int(x) % self.q
        return Fraction(x)

    def zero(self) -> Scalar:
        return self.elem(0)

    def one(self) -> Scalar:
        return self.elem(1)

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return (a + b) % self.q if self.q is not None else a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return (a - b) % self.q if self.q is not None else a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return (a * b) % self.q if self.q is not None else a * b

    def neg(self, a: Scalar) -> Scalar:
        return (-a) % self.q if self.q is not None else -a

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        if self.q is not None:
            return pow(int(a), -1, self.q)
        return 1 / Fraction(a)

    def format(self, a: Scalar) -> str:
        if self.q is not None:
            return str(int(a))
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def parse(self, s: str) -> Scalar:
        if not isinstance(s, str):
            raise ValueError(f"coefficient must be a string, got {s!r}")
        return self.elem(Fraction(s))

    def reduce(self, a: Scalar, q: int) -> int:
        """Image of a rational ``a`` in F_q; raises ZeroDivisionError if q divides the denominator."""
        a = Fraction(a)
        if a.denominator % q == 0:
            raise ZeroDivisionError(f"denominator {a.denominator} vanishes mod {q}")
        return (a.numerator % q) * pow(a.denominator, -1, q) % q

    def to_json(self) -> dict:
        return {"q": self.q} if self.q is not None else {"rational": True}

    @classmethod
    def from_json(cls, d: dict) -> "FieldSpec":
        if "q" in d:
            return cls.prime(d["q"])
        if d.get("rational") is True:
            return cls.rational()
        raise ValueError(f"bad field spec {d!r}")
