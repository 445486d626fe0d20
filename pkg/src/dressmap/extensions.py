"""Concrete finite Galois extensions L/k given by structure constants.

An element of L is a coordinate vector (tuple) over the basis ``b_0..b_{n-1}``.
``mult[i][j]`` holds the coordinates of ``b_i b_j`` and ``autos[g]`` is the
matrix of the automorphism attached to group element ``g`` (column ``c`` is
the image of ``b_c``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Sequence

from .fields import BaseField, InvariantViolation, ModP, ResourceError, is_prime
from .groups import MAX_ORDER, FiniteGroup, Subgroup, SubgroupLattice, subgroup_lattice
from .qforms import QuadraticForm, diagonalize_gram

MAX_DEGREE = MAX_ORDER
MAX_CYCLOTOMIC = 30
MAX_FIELD_SIZE = 2**63

Vector = tuple


class ExtensionError(ValueError):
    """The supplied data does not describe a finite Galois extension."""


# ---------------------------------------------------------------------------
# linear algebra over the base field


def rref(rows: list[list], k: BaseField) -> tuple[list[list], list[int]]:
    a = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = k.one() / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def nullspace(rows: list[list], n: int, k: BaseField) -> list[Vector]:
    if not rows:
        return [tuple(k(int(i == j)) for j in range(n)) for i in range(n)]
    red, pivots = rref(rows, k)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [k.zero()] * n
        v[f] = k.one()
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return basis


def solve_in_span(columns: Sequence[Vector], target: Vector, k: BaseField) -> Vector | None:
    """Coordinates of ``target`` in the span of ``columns``, or None."""
    m = len(columns)
    rows = [[col[i] for col in columns] + [target[i]] for i in range(len(target))]
    red, pivots = rref(rows, k)
    if m in pivots:
        return None
    x = [k.zero()] * m
    for row, pc in zip(red, pivots):
        x[pc] = row[m]
    return tuple(x)


def determinant(m: Sequence[Sequence], k: BaseField):
    a = [[k(x) for x in row] for row in m]
    n = len(a)
    det = k.one()
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return k.zero()
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


# ---------------------------------------------------------------------------
# polynomials (coefficient lists, low degree first)


def poly_trim(f: list) -> list:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_mul(f: list, g: list) -> list:
    if not f or not g:
        return []
    out = [f[0] * 0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return poly_trim(out)


def poly_divmod(f: list, g: list) -> tuple[list, list]:
    f, g = poly_trim(f), poly_trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    q = [g[-1] * 0] * max(len(f) - len(g) + 1, 1)
    lead = g[-1]
    while len(r) >= len(g):
        if isinstance(lead, int):
            if r[-1] % lead:
                raise ValueError("inexact integer polynomial division")
            c = r[-1] // lead
        else:
            c = r[-1] / lead
        d = len(r) - len(g)
        q[d] = c
        for i, b in enumerate(g):
            r[d + i] = r[d + i] - c * b
        r = poly_trim(r)
    return poly_trim(q), r


def poly_sub(f: list, g: list) -> list:
    n = max(len(f), len(g))
    z = (f or g)[0] * 0
    f = list(f) + [z] * (n - len(f))
    g = list(g) + [z] * (n - len(g))
    return poly_trim([a - b for a, b in zip(f, g)])


def poly_mod(f: list, g: list) -> list:
    return poly_divmod(f, g)[1]


def poly_powmod(f: list, e: int, m: list, one) -> list:
    result = [one]
    base = poly_mod(f, m)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base), m)
        base = poly_mod(poly_mul(base, base), m)
        e >>= 1
    return result


def poly_gcd(f: list, g: list) -> list:
    f, g = poly_trim(f), poly_trim(g)
    while g:
        f, g = g, poly_mod(f, g)
    if f:
        lead = f[-1]
        f = [c / lead for c in f]
    return f


def cyclotomic_polynomial(n: int) -> list[int]:
    """Integer coefficients of Phi_n, low degree first."""
    f = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            q, r = poly_divmod(f, cyclotomic_polynomial(d))
            if r:
                raise InvariantViolation("cyclotomic division left a remainder")
            f = q
    return [int(c) for c in f]


def is_irreducible_mod_p(f: list[ModP], p: int) -> bool:
    """Rabin-style test: no factor of degree <= n/2."""
    n = len(f) - 1
    one = ModP(1, p)
    x = [ModP(0, p), one]
    xp = x
    for _ in range(n // 2):
        xp = poly_powmod(xp, p, f, one)
        if len(poly_gcd(f, poly_sub(xp, x))) > 1:
            return False
    return True


def irreducible_polynomial(p: int, n: int) -> list[ModP]:
    """First monic irreducible of degree n over F_p in a fixed scan order."""
    if n == 1:
        return [ModP(0, p), ModP(1, p)]
    for tail in product(range(p), repeat=n):
        coeffs = [ModP(c, p) for c in reversed(tail)] + [ModP(1, p)]
        if coeffs[0] == 0:
            continue
        if is_irreducible_mod_p(coeffs, p):
            return coeffs
    raise InvariantViolation(f"no irreducible polynomial of degree {n} over F_{p}")


# ---------------------------------------------------------------------------
# extension data


@dataclass(frozen=True, eq=False)
class GaloisExtensionDatum:
    base: BaseField
    mult: tuple  # mult[i][j] -> Vector
    autos: tuple  # autos[g] -> matrix (tuple of rows)
    one: Vector
    group: FiniteGroup
    name: str = ""

    @property
    def degree(self) -> int:
        return len(self.one)

    @cached_property
    def lattice(self) -> SubgroupLattice:
        return subgroup_lattice(self.group)

    def zero(self) -> Vector:
        return tuple(self.base.zero() for _ in range(self.degree))

    def scalar(self, c) -> Vector:
        c = self.base(c)
        return tuple(c * x for x in self.one)

    def to_scalar(self, x: Vector):
        """c with x = c * 1, or None when x is not in k."""
        i = next(i for i, v in enumerate(self.one) if v != 0)
        c = x[i] / self.one[i]
        return c if self.scalar(c) == tuple(x) else None

    def basis_vector(self, i: int) -> Vector:
        k = self.base
        return tuple(k(int(j == i)) for j in range(self.degree))

    def add(self, x: Vector, y: Vector) -> Vector:
        return tuple(a + b for a, b in zip(x, y))

    def mul(self, x: Vector, y: Vector) -> Vector:
        return _mul(self.mult, x, y, self.base)

    def power(self, x: Vector, e: int) -> Vector:
        result, base = self.one, x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def apply(self, g: int, x: Vector) -> Vector:
        return _matvec(self.autos[g], x, self.base)

    def multiplication_matrix(self, x: Vector) -> list[list]:
        cols = [self.mul(x, self.basis_vector(j)) for j in range(self.degree)]
        return [[cols[j][i] for j in range(self.degree)] for i in range(self.degree)]

    def trace(self, x: Vector):
        """Tr_{L/k}(x): trace of multiplication by x."""
        n = self.degree
        return sum((self.mul(x, self.basis_vector(j))[j] for j in range(n)), start=self.base.zero())

    def __repr__(self):
        return f"GaloisExtensionDatum({self.name or '?'}, degree={self.degree}, base={self.base.name})"


def _mul(mult, x, y, k) -> Vector:
    n = len(x)
    out = [k.zero()] * n
    for i, a in enumerate(x):
        if a == 0:
            continue
        for j, b in enumerate(y):
            if b == 0:
                continue
            ab = a * b
            for t, c in enumerate(mult[i][j]):
                if c != 0:
                    out[t] = out[t] + ab * c
    return tuple(out)


def _matvec(m, x, k) -> Vector:
    return tuple(sum((row[j] * x[j] for j in range(len(x))), start=k.zero()) for row in m)


def _matmul(a, b, k):
    n = len(a)
    return tuple(tuple(sum((a[i][t] * b[t][j] for t in range(n)), start=k.zero()) for j in range(n)) for i in range(n))


def make_extension(base: BaseField, mult, autos, one, name: str = "") -> GaloisExtensionDatum:
    """Validate raw extension data and attach the group of automorphisms.

    Checks that every automorphism is a bijective k-algebra map, that the
    automorphisms are closed under composition (which yields the Cayley
    table), that there are exactly ``degree`` of them, and that the trace
    form of L/k is nondegenerate.
    """
    k = base
    n = len(one)
    if n > MAX_DEGREE:
        raise ResourceError(f"degree {n} exceeds cap {MAX_DEGREE}")
    mult = tuple(tuple(tuple(k(c) for c in mult[i][j]) for j in range(n)) for i in range(n))
    autos = tuple(tuple(tuple(k(c) for c in row) for row in a) for a in autos)
    one = tuple(k(c) for c in one)
    basis = [tuple(k(int(i == j)) for j in range(n)) for i in range(n)]
    for i in range(n):
        if _mul(mult, one, basis[i], k) != basis[i]:
            raise ExtensionError("declared unit is not a multiplicative identity")
    if len(autos) != n:
        raise ExtensionError(f"a Galois extension of degree {n} needs {n} automorphisms, got {len(autos)}")
    for idx, a in enumerate(autos):
        if determinant(a, k) == 0:
            raise ExtensionError(f"automorphism {idx} is not invertible")
        if _matvec(a, one, k) != one:
            raise ExtensionError(f"automorphism {idx} does not fix 1")
        for i in range(n):
            for j in range(n):
                lhs = _matvec(a, mult[i][j], k)
                rhs = _mul(mult, _matvec(a, basis[i], k), _matvec(a, basis[j], k), k)
                if lhs != rhs:
                    raise ExtensionError(f"automorphism {idx} does not respect multiplication on (b{i}, b{j})")
    index = {a: i for i, a in enumerate(autos)}
    if len(index) != n:
        raise ExtensionError("automorphisms are not distinct")
    table = []
    for a in autos:
        row = []
        for b in autos:
            c = _matmul(a, b, k)
            if c not in index:
                raise ExtensionError("automorphisms are not closed under composition")
            row.append(index[c])
        table.append(row)
    group = FiniteGroup(table, name=name and f"Gal({name})")
    ext = GaloisExtensionDatum(k, mult, autos, one, group, name)
    gram = [[ext.trace(ext.mul(basis[i], basis[j])) for j in range(n)] for i in range(n)]
    if determinant(gram, k) == 0:
        raise ExtensionError("trace form is degenerate: the extension is not separable")
    return ext


def from_modulus(base: BaseField, modulus: list, images: Sequence[list], name: str = "") -> GaloisExtensionDatum:
    """L = k[x]/(f) with automorphisms ``x -> images[g](x)``."""
    k = base
    f = poly_trim([k(c) for c in modulus])
    if len(f) < 2:
        raise ExtensionError("modulus must have positive degree")
    lead = f[-1]
    f = [c / lead for c in f]
    n = len(f) - 1

    def vec(poly):
        r = poly_mod(poly_trim([k(c) for c in poly]), f)
        return tuple(r + [k.zero()] * (n - len(r)))

    def monomial(e):
        return [k.zero()] * e + [k.one()]

    mult = [[vec(monomial(i + j)) for j in range(n)] for i in range(n)]
    autos = []
    for img in images:
        img = poly_trim([k(c) for c in img])
        cols = [vec(poly_powmod(img, e, f, k.one())) if e else vec([k.one()]) for e in range(n)]
        autos.append([[cols[c][r] for c in range(n)] for r in range(n)])
    return make_extension(k, mult, autos, vec([k.one()]), name)


def multiquadratic(base: BaseField, gens: Sequence[int]) -> GaloisExtensionDatum:
    """Q(sqrt a_1, ..., sqrt a_m) with the square-root monomial basis."""
    if base.kind != "Q":
        raise ExtensionError("multiquadratic extensions are built over Q")
    gens = [int(a) for a in gens]
    m = len(gens)
    if m == 0:
        raise ExtensionError("need at least one generator")
    for a in gens:
        if a == 0:
            raise ExtensionError("generator 0 is not a unit")
    for mask in range(1, 1 << m):
        prod = 1
        for i in range(m):
            if mask >> i & 1:
                prod *= gens[i]
        if base.is_square(prod):
            subset = [gens[i] for i in range(m) if mask >> i & 1]
            raise ExtensionError(f"generators are dependent modulo squares: product of {subset} is a square")
    n = 1 << m
    k = base

    def coeff(s, t):
        c = 1
        for i in range(m):
            if (s & t) >> i & 1:
                c *= gens[i]
        return c

    mult = [[tuple(k(coeff(s, t) if u == s ^ t else 0) for u in range(n)) for t in range(n)] for s in range(n)]
    autos = []
    for g in range(n):
        autos.append([[k((-1) ** bin(g & c).count("1") if r == c else 0) for c in range(n)] for r in range(n)])
    name = "Q(" + ", ".join(f"sqrt({a})" for a in gens) + ")"
    return make_extension(k, mult, autos, tuple(k(int(u == 0)) for u in range(n)), name)


def cyclotomic(n: int, cap: int = MAX_CYCLOTOMIC) -> GaloisExtensionDatum:
    """Q(zeta_n) = Q[x]/Phi_n with automorphisms x -> x^j, gcd(j, n) = 1."""
    if not 3 <= n <= cap:
        raise ExtensionError(f"cyclotomic index must lie in [3, {cap}], got {n}")
    from math import gcd

    k = BaseField.rationals()
    units = [j for j in range(1, n) if gcd(j, n) == 1]
    images = [[0] * j + [1] for j in units]
    return from_modulus(k, cyclotomic_polynomial(n), images, f"Q(zeta_{n})")


def finite_field_tower(p: int, n: int) -> GaloisExtensionDatum:
    """F_{p^n}/F_p with Galois group generated by Frobenius x -> x^p."""
    if p == 2 or not is_prime(p):
        raise ExtensionError(f"p must be an odd prime, got {p}")
    if n < 1:
        raise ExtensionError(f"degree must be positive, got {n}")
    if p**n >= MAX_FIELD_SIZE or n > MAX_DEGREE:
        raise ResourceError(f"F_{p}^{n} exceeds the size cap")
    k = BaseField.prime_field(p)
    f = irreducible_polynomial(p, n)
    x = [k.zero(), k.one()]
    # powers of Frobenius: x -> x^(p^j)
    images = [poly_powmod(x, p**j, f, k.one()) for j in range(n)]
    return from_modulus(k, f, images, f"F_{p}^{n}")


def euclidean_gaussian() -> GaloisExtensionDatum:
    """k(i)/k for an abstract euclidean field k."""
    k = BaseField.euclidean()
    return from_modulus(k, [1, 0, 1], [[0, 1], [0, -1]], "k_euc(i)")


def trivial_extension(base: BaseField) -> GaloisExtensionDatum:
    return make_extension(base, [[(1,)]], [[[1]]], (1,), f"{base.name}/{base.name}")


# ---------------------------------------------------------------------------
# fixed fields and trace forms


@dataclass(frozen=True, eq=False)
class FixedField:
    parent: GaloisExtensionDatum
    subgroup: Subgroup
    basis: tuple[Vector, ...]  # vectors of L spanning L^H
    mult: tuple  # structure constants in ``basis``
    one: Vector  # coordinates of 1 in ``basis``

    @property
    def degree(self) -> int:
        return len(self.basis)

    def coordinates(self, x: Vector) -> Vector:
        c = solve_in_span(self.basis, x, self.parent.base)
        if c is None:
            raise ValueError("element does not lie in the fixed field")
        return c

    def embed(self, c: Vector) -> Vector:
        k = self.parent.base
        n = self.parent.degree
        return tuple(sum((ci * b[t] for ci, b in zip(c, self.basis)), start=k.zero()) for t in range(n))

    def trace(self, c: Vector):
        """tr_{L^H/k} of the element with coordinates ``c``."""
        d = self.degree
        k = self.parent.base
        basis = [tuple(k(int(i == j)) for j in range(d)) for i in range(d)]
        return sum((_mul(self.mult, c, basis[j], k)[j] for j in range(d)), start=k.zero())


def fixed_field(ext: GaloisExtensionDatum, h: Subgroup) -> FixedField:
    k = ext.base
    n = ext.degree
    rows = []
    for s in h.elements:
        if s == ext.group.identity:
            continue
        a = ext.autos[s]
        rows.extend([a[i][j] - k(int(i == j)) for j in range(n)] for i in range(n))
    basis = nullspace(rows, n, k)
    index = ext.group.order // h.order
    if len(basis) != index:
        raise InvariantViolation(f"fixed field has dimension {len(basis)}, expected [G:H] = {index}")
    ff = FixedField(ext, h, tuple(basis), (), ())
    mult = tuple(tuple(ff.coordinates(ext.mul(b1, b2)) for b2 in basis) for b1 in basis)
    object.__setattr__(ff, "mult", mult)
    object.__setattr__(ff, "one", ff.coordinates(ext.one))
    return ff


@dataclass(frozen=True)
class TraceForm:
    source: FixedField
    form: QuadraticForm
    gram: tuple


def trace_form(ext: GaloisExtensionDatum, h: Subgroup) -> TraceForm:
    """The form x -> tr_{L^H/k}(x^2) on the fixed field of ``h``.

    The trace is taken on L^H itself; where the characteristic does not
    divide [L:L^H] it is also checked against Tr_{L/k} / [L:L^H].
    """
    ff = fixed_field(ext, h)
    k = ext.base
    d = ff.degree
    basis = [tuple(k(int(i == j)) for j in range(d)) for i in range(d)]
    gram = []
    index = h.order
    for i in range(d):
        row = []
        for j in range(d):
            prod = _mul(ff.mult, basis[i], basis[j], k)
            t = ff.trace(prod)
            if ext.trace(ff.embed(prod)) != index * t:
                raise InvariantViolation("transitivity of the trace failed")
            row.append(t)
        gram.append(row)
    diag = diagonalize_gram(gram, k)
    if diag.form.rank != d:
        raise InvariantViolation("trace form rank differs from [G:H]")
    return TraceForm(ff, diag.form, tuple(map(tuple, gram)))


def quotient_extension(ext: GaloisExtensionDatum, normal: Subgroup) -> GaloisExtensionDatum:
    """L^N / k as a datum in its own right, with Galois group G/N."""
    g = ext.group
    for x in g.elements():
        if any(g.conj(x, y) not in normal for y in normal.elements):
            raise ExtensionError("subgroup is not normal")
    ff = fixed_field(ext, normal)
    reps = []
    seen: set[int] = set()
    for x in g.elements():
        if x not in seen:
            seen |= {g.mul(x, y) for y in normal.elements}
            reps.append(x)
    autos = []
    for x in reps:
        cols = [ff.coordinates(ext.apply(x, b)) for b in ff.basis]
        autos.append([[cols[c][r] for c in range(ff.degree)] for r in range(ff.degree)])
    name = f"{ext.name}^N{len(normal.elements)}"
    return make_extension(ext.base, ff.mult, autos, ff.one, name)


def sqrt_in_extension(ext: GaloisExtensionDatum, c) -> Vector | None:
    """Some x in L with x^2 = c for c in k; F_p-based extensions only."""
    k = ext.base
    if k.kind != "Fp":
        raise ValueError("explicit square roots are only searched in finite fields")
    target = ext.scalar(c)
    p, n = k.p, ext.degree
    q = p**n
    if q <= 5000:
        for coords in product(range(p), repeat=n):
            x = tuple(k(a) for a in coords)
            if ext.mul(x, x) == target:
                return x
        return None
    # Euler's criterion in L, then Tonelli-Shanks
    if ext.power(target, (q - 1) // 2) != ext.one:
        return None
    s, t = 0, q - 1
    while t % 2 == 0:
        s, t = s + 1, t // 2
    z = None
    for coords in product(range(p), repeat=n):
        cand = tuple(k(a) for a in coords)
        if any(cand) and ext.power(cand, (q - 1) // 2) != ext.one:
            z = cand
            break
    m, cc, tt, r = s, ext.power(z, t), ext.power(target, t), ext.power(target, (t + 1) // 2)
    while tt != ext.one:
        i, x = 0, tt
        while x != ext.one:
            x = ext.mul(x, x)
            i += 1
        b = cc
        for _ in range(m - i - 1):
            b = ext.mul(b, b)
        m, cc = i, ext.mul(b, b)
        tt, r = ext.mul(tt, cc), ext.mul(r, b)
    if ext.mul(r, r) != target:
        raise InvariantViolation("Tonelli-Shanks produced a wrong square root")
    return r
