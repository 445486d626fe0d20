"""Diagonal quadratic forms and Grothendieck-Witt arithmetic.

Equality in GW(k) is decided two independent ways:

* :func:`equivalent` compares classical invariants (rank, discriminant,
  signature, Hasse invariants at every relevant place over Q);
* :func:`invariant_vector` maps an element to an additive complete
  invariant (rank, signature, second residues), so that ``x == 0`` iff the
  vector vanishes.  This second route is what makes kernels of maps into
  GW(k) pure integer linear algebra.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .fields import BaseField, InvariantViolation, legendre, squarefree_part, valuation
from sympy import primefactors

INFINITY = "inf"


@dataclass(frozen=True)
class QuadraticForm:
    """Nondegenerate diagonal form <a_1, ..., a_n> with canonical entries."""

    field: BaseField
    entries: tuple[int, ...]

    def __post_init__(self):
        canon = tuple(sorted(self.field.square_class(a) for a in self.entries))
        object.__setattr__(self, "entries", canon)

    @property
    def rank(self) -> int:
        return len(self.entries)

    def __add__(self, other: QuadraticForm) -> QuadraticForm:
        _check_same(self.field, other.field)
        return QuadraticForm(self.field, self.entries + other.entries)

    def __mul__(self, other: QuadraticForm) -> QuadraticForm:
        _check_same(self.field, other.field)
        k = self.field
        return QuadraticForm(k, tuple(k.mul_classes(a, b) for a in self.entries for b in other.entries))

    def __rmul__(self, n: int) -> QuadraticForm:
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        return QuadraticForm(self.field, self.entries * n)

    def scaled(self, a) -> QuadraticForm:
        return QuadraticForm(self.field, tuple(self.field.mul_classes(a, x) for x in self.entries))

    def discriminant(self) -> int:
        """Square class of the product of the entries (empty product is 1)."""
        d = 1
        for a in self.entries:
            d = self.field.mul_classes(d, a)
        return d

    def signature(self) -> int:
        if self.field.kind == "Fp":
            raise ValueError("finite fields are not ordered")
        return sum(1 if a > 0 else -1 for a in self.entries)

    def __str__(self):
        return "<" + ", ".join(map(str, self.entries)) + ">"


def form(k: BaseField, *entries) -> QuadraticForm:
    return QuadraticForm(k, tuple(entries))


def _check_same(a: BaseField, b: BaseField):
    if a != b:
        raise ValueError(f"field mismatch: {a.name} vs {b.name}")


# ---------------------------------------------------------------------------
# Gram matrices


@dataclass(frozen=True)
class Diagonalization:
    form: QuadraticForm
    diagonal: tuple
    change_of_basis: tuple  # P with columns the new basis vectors


def _matmul(a, b):
    return [[sum((a[i][t] * b[t][j] for t in range(len(b))), start=a[i][0] * 0) for j in range(len(b[0]))]
            for i in range(len(a))]


def _transpose(a):
    return [list(r) for r in zip(*a)]


def diagonalize_gram(m: Sequence[Sequence], k: BaseField) -> Diagonalization:
    """Diagonalize a symmetric nondegenerate matrix by congruence.

    Returns the diagonal form together with the change of basis ``P``;
    ``P^T m P`` is checked to be the returned diagonal before returning.
    """
    n = len(m)
    a = [[k(x) for x in row] for row in m]
    for i in range(n):
        for j in range(n):
            if a[i][j] != a[j][i]:
                raise ValueError("Gram matrix is not symmetric")
    # p holds the current basis vectors as rows (P^T)
    p = [[k(1 if i == j else 0) for j in range(n)] for i in range(n)]
    g = [row[:] for row in a]
    diag = []
    for i in range(n):
        if g[i][i] == 0:
            j = next((j for j in range(i + 1, n) if g[j][j] != 0), None)
            if j is not None:
                g[i], g[j] = g[j], g[i]
                for row in g:
                    row[i], row[j] = row[j], row[i]
                p[i], p[j] = p[j], p[i]
            else:
                j = next((j for j in range(i + 1, n) if g[i][j] != 0), None)
                if j is None:
                    raise ValueError("Gram matrix is degenerate")
                # e_i <- e_i + e_j gives g_ii = 2 g_ij != 0 (char != 2)
                for c in range(n):
                    g[i][c] = g[i][c] + g[j][c]
                for r in range(n):
                    g[r][i] = g[r][i] + g[r][j]
                p[i] = [x + y for x, y in zip(p[i], p[j])]
        piv = g[i][i]
        for r in range(i + 1, n):
            f = g[r][i] / piv
            if f == 0:
                continue
            for c in range(n):
                g[r][c] = g[r][c] - f * g[i][c]
            for c in range(n):
                g[c][r] = g[c][r] - f * g[c][i]
            p[r] = [x - f * y for x, y in zip(p[r], p[i])]
        diag.append(piv)
    pm = _transpose(p)
    check = _matmul(_matmul(p, a), pm)
    for i in range(n):
        for j in range(n):
            want = diag[i] if i == j else 0
            if check[i][j] != want:
                raise InvariantViolation("congruence certificate failed")
    return Diagonalization(QuadraticForm(k, tuple(diag)), tuple(diag), tuple(map(tuple, pm)))


# ---------------------------------------------------------------------------
# Local invariants over Q


def _as_squarefree(a) -> int:
    a = Fraction(a)
    if a == 0:
        raise ValueError("Hilbert symbol of zero")
    return squarefree_part(a.numerator * a.denominator)


def hilbert_symbol(a, b, place) -> int:
    """Hilbert symbol (a, b)_v over Q at a prime ``v`` or at ``"inf"``."""
    a, b = _as_squarefree(a), _as_squarefree(b)
    if place == INFINITY:
        return -1 if a < 0 and b < 0 else 1
    p = place
    alpha, beta = valuation(a, p), valuation(b, p)
    u, v = a // p**alpha, b // p**beta
    if p == 2:
        eps = lambda x: ((x - 1) // 2) % 2  # noqa: E731
        omega = lambda x: ((x * x - 1) // 8) % 2  # noqa: E731
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    s = (-1) ** (alpha * beta * ((p - 1) // 2))
    return s * legendre(u, p) ** beta * legendre(v, p) ** alpha


def hasse_invariant(q: QuadraticForm, place) -> int:
    out = 1
    e = q.entries
    for i in range(len(e)):
        for j in range(i + 1, len(e)):
            out *= hilbert_symbol(e[i], e[j], place)
    return out


def relevant_places(*forms: QuadraticForm) -> list:
    primes = {2}
    for q in forms:
        for a in q.entries:
            primes.update(primefactors(abs(a)))
    return [INFINITY] + sorted(primes)


def equivalent(q1: QuadraticForm, q2: QuadraticForm) -> bool:
    """Isometry of two forms over the same base field."""
    _check_same(q1.field, q2.field)
    if q1.rank != q2.rank or q1.discriminant() != q2.discriminant():
        return False
    kind = q1.field.kind
    if kind == "Fp":
        return True
    if q1.signature() != q2.signature():
        return False
    if kind == "euclidean":
        return True
    return all(hasse_invariant(q1, v) == hasse_invariant(q2, v) for v in relevant_places(q1, q2))


# ---------------------------------------------------------------------------
# GW(k)


def _reduce(pos: Iterable[int], neg: Iterable[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    cp, cn = Counter(pos), Counter(neg)
    common = cp & cn
    cp, cn = cp - common, cn - common
    return tuple(sorted(cp.elements())), tuple(sorted(cn.elements()))


@dataclass(frozen=True)
class GWElement:
    """Formal difference ``pos - neg`` of diagonal forms, common entries cancelled."""

    field: BaseField
    pos: tuple[int, ...] = ()
    neg: tuple[int, ...] = ()

    def __post_init__(self):
        k = self.field
        p, n = _reduce((k.square_class(a) for a in self.pos), (k.square_class(a) for a in self.neg))
        object.__setattr__(self, "pos", p)
        object.__setattr__(self, "neg", n)

    @classmethod
    def zero(cls, k: BaseField) -> GWElement:
        return cls(k)

    @classmethod
    def one(cls, k: BaseField) -> GWElement:
        return cls(k, (1,))

    @classmethod
    def of(cls, q: QuadraticForm) -> GWElement:
        return cls(q.field, q.entries)

    @property
    def rank(self) -> int:
        return len(self.pos) - len(self.neg)

    @property
    def pos_form(self) -> QuadraticForm:
        return QuadraticForm(self.field, self.pos)

    @property
    def neg_form(self) -> QuadraticForm:
        return QuadraticForm(self.field, self.neg)

    def __add__(self, other: GWElement) -> GWElement:
        _check_same(self.field, other.field)
        return GWElement(self.field, self.pos + other.pos, self.neg + other.neg)

    def __neg__(self) -> GWElement:
        return GWElement(self.field, self.neg, self.pos)

    def __sub__(self, other: GWElement) -> GWElement:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.__rmul__(other)
        _check_same(self.field, other.field)
        k = self.field
        prod = lambda xs, ys: [k.mul_classes(x, y) for x in xs for y in ys]  # noqa: E731
        pos = prod(self.pos, other.pos) + prod(self.neg, other.neg)
        neg = prod(self.pos, other.neg) + prod(self.neg, other.pos)
        return GWElement(k, tuple(pos), tuple(neg))

    def __rmul__(self, n: int) -> GWElement:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return GWElement(self.field, self.neg * -n, self.pos * -n)
        return GWElement(self.field, self.pos * n, self.neg * n)

    def is_zero(self) -> bool:
        return gw_is_zero(self)

    def __str__(self):
        if not self.pos and not self.neg:
            return "0"
        s = str(self.pos_form) if self.pos else ""
        if self.neg:
            s += " - " + str(self.neg_form)
        return s.strip()


def gw(k: BaseField, *entries) -> GWElement:
    return GWElement(k, tuple(entries))


def gw_add(x: GWElement, y: GWElement) -> GWElement:
    return x + y


def gw_sub(x: GWElement, y: GWElement) -> GWElement:
    return x - y


def gw_mul(x: GWElement, y: GWElement) -> GWElement:
    return x * y


# ---------------------------------------------------------------------------
# Complete additive invariant


@dataclass(frozen=True)
class InvariantVector:
    """Additive complete invariant of an element of GW(k).

    Over Q: rank, signature and the second residues.  For odd p the residue
    lives in W(F_p), stored as ``(rank mod 2, disc)`` when p = 1 mod 4 and as
    an element of Z/4 (nonresidue -> 3) when p = 3 mod 4; at 2 it is the
    parity of the number of entries of odd 2-adic valuation.  Over F_p:
    rank and discriminant (0/1).  Over a euclidean field: rank, signature.
    """

    field: BaseField
    rank: int
    signature: int | None = None
    disc: int | None = None
    residues: tuple = field(default=())  # sorted (p, value), zero values omitted

    def coordinates(self) -> dict[tuple, tuple[int, int]]:
        """Map coordinate key -> (value, modulus); modulus 0 means Z."""
        out: dict[tuple, tuple[int, int]] = {("rank",): (self.rank, 0)}
        if self.signature is not None:
            out[("signature",)] = (self.signature, 0)
        if self.disc is not None:
            out[("disc",)] = (self.disc, 2)
        for p, val in self.residues:
            out.update(_residue_coords(p, val))
        return out

    def is_zero(self) -> bool:
        return all(v % m == 0 if m else v == 0 for v, m in self.coordinates().values())


def _residue_coords(p: int, val) -> dict:
    if p == 2:
        return {("res", 2): (val, 2)}
    if p % 4 == 1:
        return {("res", p, "rank"): (val[0], 2), ("res", p, "disc"): (val[1], 2)}
    return {("res", p): (val, 4)}


def residue_keys(p: int) -> list[tuple]:
    """All coordinate keys of the residue at ``p`` (with moduli)."""
    return [(k, m) for k, (_, m) in _residue_coords(p, (0, 0) if p % 4 == 1 and p != 2 else 0).items()]


def _residue_of_entry(a: int, p: int):
    """Second residue at p of the one-dimensional form <a>, a squarefree."""
    if a % p:
        return None
    if p == 2:
        return 1
    u = a // p
    chi = legendre(u, p)
    if p % 4 == 1:
        return (1, 0 if chi == 1 else 1)
    return 1 if chi == 1 else 3


def _add_residue(p, acc, val, sign):
    if p == 2:
        return (acc + sign * val) % 2
    if p % 4 == 1:
        return ((acc[0] + sign * val[0]) % 2, (acc[1] + sign * val[1]) % 2)
    return (acc + sign * val) % 4


def invariant_vector(x: GWElement) -> InvariantVector:
    k = x.field
    rank = x.rank
    if k.kind == "Fp":
        u = k.nonresidue
        disc = (sum(a == u for a in x.pos) - sum(a == u for a in x.neg)) % 2
        return InvariantVector(k, rank, disc=disc)
    sig = sum(1 if a > 0 else -1 for a in x.pos) - sum(1 if a > 0 else -1 for a in x.neg)
    if k.kind == "euclidean":
        return InvariantVector(k, rank, signature=sig)
    acc: dict[int, object] = {}
    for sign, entries in ((1, x.pos), (-1, x.neg)):
        for a in entries:
            for p in primefactors(abs(a)):
                val = _residue_of_entry(a, p)
                start = (0, 0) if p % 4 == 1 and p != 2 else 0
                acc[p] = _add_residue(p, acc.get(p, start), val, sign)
    residues = tuple(sorted((p, v) for p, v in acc.items() if v not in (0, (0, 0))))
    return InvariantVector(k, rank, signature=sig, residues=residues)


def gw_is_zero(x: GWElement) -> bool:
    return invariant_vector(x).is_zero()


def gw_is_zero_by_equivalence(x: GWElement) -> bool:
    """Independent zero test: Witt cancellation reduces it to an isometry."""
    return len(x.pos) == len(x.neg) and equivalent(x.pos_form, x.neg_form)
