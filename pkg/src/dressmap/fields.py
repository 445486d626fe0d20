"""Base fields of characteristic not 2 and their square classes.

Three kinds of base field are supported:

* ``Q``: the rationals, elements are :class:`fractions.Fraction`, square
  classes are nonzero squarefree integers.
* ``Fp``: a prime field of odd characteristic, elements are :class:`ModP`,
  square classes are ``1`` and the least positive nonresidue ``u``.
* ``euclidean``: an abstract euclidean field.  Rationals stand in for its
  elements (an ordered subfield is enough for every computation we do) and
  every positive element counts as a square, so the square classes are
  ``+1`` and ``-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import factorint

# Largest |n| we are willing to reduce to a squarefree part.
SQUAREFREE_CAP = 2**63


class ResourceError(RuntimeError):
    """A configured size cap was exceeded."""


class InvariantViolation(AssertionError):
    """An internal consistency check failed; indicates a bug, not bad input."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@lru_cache(maxsize=None)
def squarefree_part(n: int) -> int:
    """Return the squarefree integer in the square class of ``n`` (sign kept)."""
    if n == 0:
        raise ValueError("zero has no square class")
    if abs(n) >= SQUAREFREE_CAP:
        raise ResourceError(f"|{n}| exceeds the squarefree cap 2**63")
    sign = -1 if n < 0 else 1
    out = 1
    for p, e in factorint(abs(n)).items():
        if e % 2:
            out *= p
    return sign * out


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p; 0 when p divides a."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def least_nonresidue(p: int) -> int:
    u = 2
    while legendre(u, p) != -1:
        u += 1
    return u


class ModP:
    """Element of the prime field F_p."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> int | None:
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else ModP(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else ModP(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else ModP(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else ModP(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return ModP(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModP(o, self.p) / self

    def __neg__(self):
        return ModP(-self.value, self.p)

    def __pow__(self, e: int):
        if e < 0:
            return ModP(pow(self.value, -1, self.p), self.p) ** (-e)
        return ModP(pow(self.value, e, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self.value - o) % self.p == 0

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


@dataclass(frozen=True)
class BaseField:
    """A supported base field ``k``; see the module docstring."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("Q", "Fp", "euclidean"):
            raise ValueError(f"unknown base field kind {self.kind!r}")
        if self.kind == "Fp":
            if self.p is None or self.p == 2 or not is_prime(self.p):
                raise ValueError(f"F_p needs an odd prime, got {self.p}")
        elif self.p is not None:
            raise ValueError("only prime fields carry p")

    @classmethod
    def rationals(cls) -> BaseField:
        return cls("Q")

    @classmethod
    def prime_field(cls, p: int) -> BaseField:
        return cls("Fp", p)

    @classmethod
    def euclidean(cls) -> BaseField:
        return cls("euclidean")

    @property
    def name(self) -> str:
        return {"Q": "Q", "euclidean": "k_euc"}.get(self.kind) or f"F_{self.p}"

    @property
    def nonresidue(self) -> int:
        if self.kind != "Fp":
            raise ValueError("nonresidue is only defined for prime fields")
        return least_nonresidue(self.p)

    def __call__(self, x):
        """Coerce an int, Fraction or field element into this field."""
        if self.kind == "Fp":
            if isinstance(x, ModP):
                return x
            if isinstance(x, Fraction):
                return ModP(x.numerator, self.p) / x.denominator
            return ModP(int(x), self.p)
        return Fraction(x)

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def square_class(self, x) -> int:
        """Canonical representative of the square class of a nonzero ``x``."""
        if self.kind == "Fp":
            v = self(x).value
            if v == 0:
                raise ValueError("zero has no square class")
            return 1 if legendre(v, self.p) == 1 else self.nonresidue
        x = Fraction(x)
        if x == 0:
            raise ValueError("zero has no square class")
        if self.kind == "euclidean":
            return 1 if x > 0 else -1
        return squarefree_part(x.numerator * x.denominator)

    def mul_classes(self, a: int, b: int) -> int:
        return self.square_class(self(a) * self(b))

    def is_square(self, x) -> bool:
        return self.square_class(x) == 1

    def square_class_generators(self) -> list[int] | None:
        """Generators of k^x/(k^x)^2, or None when that group is infinite."""
        if self.kind == "Q":
            return None
        if self.kind == "Fp":
            return [self.nonresidue]
        return [-1]

    def square_classes(self) -> list[int] | None:
        if self.kind == "Q":
            return None
        if self.kind == "Fp":
            return [1, self.nonresidue]
        return [1, -1]
