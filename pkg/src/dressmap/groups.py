"""Finite groups as Cayley tables, subgroup lattices, tables of marks and A(G)."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from .fields import InvariantViolation, ResourceError

MAX_ORDER = 64


class FiniteGroup:
    """Group on elements ``0..n-1`` given by its Cayley table (row g, column h -> g*h)."""

    def __init__(self, cayley: Sequence[Sequence[int]], identity: int | None = None, name: str = "",
                 max_order: int = MAX_ORDER, check: bool = True):
        n = len(cayley)
        if n == 0:
            raise ValueError("a group needs at least one element")
        if n > max_order:
            raise ResourceError(f"group order {n} exceeds cap {max_order}")
        self.cayley = tuple(tuple(int(x) for x in row) for row in cayley)
        if identity is None:
            identity = next((e for e in range(n) if self.cayley[e] == tuple(range(n))), None)
            if identity is None:
                raise ValueError("Cayley table has no identity row")
        self.identity = identity
        self.name = name or f"G{n}"
        if check:
            self._validate()
        self._inverse = tuple(self.cayley[g].index(identity) for g in range(n))

    def _validate(self):
        n = self.order
        full = set(range(n))
        for row in self.cayley:
            if len(row) != n or set(row) != full:
                raise ValueError("Cayley table is not a Latin square")
        for j in range(n):
            if {self.cayley[i][j] for i in range(n)} != full:
                raise ValueError("Cayley table is not a Latin square")
        e = self.identity
        if self.cayley[e] != tuple(range(n)) or any(self.cayley[g][e] != g for g in range(n)):
            raise ValueError(f"element {e} is not a two-sided identity")
        t = self.cayley
        for a, b, c in product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise ValueError(f"not associative at ({a}, {b}, {c})")

    @property
    def order(self) -> int:
        return len(self.cayley)

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def inv(self, a: int) -> int:
        return self._inverse[a]

    def conj(self, g: int, h: int) -> int:
        """g h g^-1"""
        return self.cayley[self.cayley[g][h]][self._inverse[g]]

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.cayley[x][g]
            k += 1
        return k

    def is_abelian(self) -> bool:
        t = self.cayley
        return all(t[a][b] == t[b][a] for a in self.elements() for b in range(a))

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    # -- constructors --------------------------------------------------

    @classmethod
    def cyclic(cls, n: int) -> FiniteGroup:
        if n < 1:
            raise ValueError(f"cyclic group order must be positive, got {n}")
        return cls([[(a + b) % n for b in range(n)] for a in range(n)], 0, f"C{n}")

    @classmethod
    def klein(cls) -> FiniteGroup:
        return cls([[a ^ b for b in range(4)] for a in range(4)], 0, "V4")

    @classmethod
    def direct_product(cls, g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
        m = h.order
        table = [[g.mul(a // m, b // m) * m + h.mul(a % m, b % m) for b in range(g.order * m)]
                 for a in range(g.order * m)]
        return cls(table, g.identity * m + h.identity, f"{g.name}x{h.name}")

    @classmethod
    def from_permutations(cls, gens: Iterable[Sequence[int]], name: str = "",
                          max_order: int = MAX_ORDER) -> FiniteGroup:
        """Closure of permutation generators (tuples of images of 0..d-1)."""
        gens = [tuple(g) for g in gens]
        d = len(gens[0]) if gens else 1
        ident = tuple(range(d))
        elems = [ident]
        index = {ident: 0}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = tuple(x[g[i]] for i in range(d))  # x after g
                    if y not in index:
                        index[y] = len(elems)
                        elems.append(y)
                        nxt.append(y)
                        if len(elems) > max_order:
                            raise ResourceError(f"generated group exceeds cap {max_order}")
            frontier = nxt
        compose = lambda a, b: tuple(a[b[i]] for i in range(d))  # noqa: E731
        table = [[index[compose(a, b)] for b in elems] for a in elems]
        return cls(table, 0, name or f"Perm{len(elems)}", max_order=max_order)

    @classmethod
    def symmetric(cls, n: int) -> FiniteGroup:
        gens = [tuple([1, 0] + list(range(2, n)))] if n > 1 else []
        if n > 2:
            gens.append(tuple(list(range(1, n)) + [0]))
        return cls.from_permutations(gens or [tuple(range(max(n, 1)))], f"S{n}")

    @classmethod
    def dihedral(cls, n: int) -> FiniteGroup:
        """Symmetries of the n-gon, order 2n."""
        rot = tuple((i + 1) % n for i in range(n))
        ref = tuple((-i) % n for i in range(n))
        return cls.from_permutations([rot, ref], f"D{2 * n}")

    @classmethod
    def quaternion(cls) -> FiniteGroup:
        # elements (sign, unit) with units 1, i, j, k encoded 0..3
        unit = {(0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
                (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
                (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
                (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0)}

        def mul(a, b):
            sa, ua = divmod(a, 4)
            sb, ub = divmod(b, 4)
            s, u = unit[(ua, ub)]
            neg = (sa + sb + (s < 0)) % 2
            return neg * 4 + u

        return cls([[mul(a, b) for b in range(8)] for a in range(8)], 0, "Q8")


# ---------------------------------------------------------------------------
# Subgroups


@dataclass(frozen=True, order=True)
class Subgroup:
    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: int) -> bool:
        return g in self._set

    @cached_property
    def _set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def issubset(self, other: Subgroup) -> bool:
        return self._set <= other._set


def _mask(elems: Iterable[int]) -> int:
    m = 0
    for e in elems:
        m |= 1 << e
    return m


def _elements(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def generated_subgroup(g: FiniteGroup, gens: Iterable[int]) -> int:
    """Bitmask of the subgroup generated by ``gens``."""
    gens = list(set(gens))
    seen = {g.identity}
    frontier = [g.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = g.mul(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return _mask(seen)


@dataclass(frozen=True, eq=False)
class SubgroupLattice:
    """All subgroups of ``group`` together with their conjugacy classes.

    Classes are ordered by subgroup size, ties broken by the sorted element
    tuple of the canonical (lexicographically least) representative.
    """

    group: FiniteGroup
    subgroups: tuple[Subgroup, ...]
    classes: tuple[tuple[int, ...], ...]  # indices into subgroups; first entry is canonical

    @property
    def representatives(self) -> tuple[Subgroup, ...]:
        return tuple(self.subgroups[c[0]] for c in self.classes)

    @cached_property
    def _class_of(self) -> dict[tuple[int, ...], int]:
        return {self.subgroups[i].elements: ci for ci, c in enumerate(self.classes) for i in c}

    def class_of(self, h: Subgroup | Iterable[int]) -> int:
        key = h.elements if isinstance(h, Subgroup) else tuple(sorted(h))
        return self._class_of[key]

    def class_size(self, c: int) -> int:
        return len(self.classes[c])

    def is_normal(self, c: int) -> bool:
        return len(self.classes[c]) == 1

    def __len__(self):
        return len(self.classes)


def subgroup_lattice(g: FiniteGroup, max_order: int = MAX_ORDER) -> SubgroupLattice:
    if g.order > max_order:
        raise ResourceError(f"group order {g.order} exceeds cap {max_order}")
    cyclic = sorted({generated_subgroup(g, [x]) for x in g.elements()})
    found = set(cyclic)
    queue = list(cyclic)
    while queue:
        h = queue.pop()
        for c in cyclic:
            if c & ~h:
                j = generated_subgroup(g, _elements(h | c))
                if j not in found:
                    found.add(j)
                    queue.append(j)
    subs = sorted((_elements(m) for m in found), key=lambda e: (len(e), e))
    for s in subs:
        if g.order % len(s):
            raise InvariantViolation(f"subgroup of size {len(s)} violates Lagrange")
    index = {s: i for i, s in enumerate(subs)}
    seen = set()
    classes = []
    for i, s in enumerate(subs):
        if i in seen:
            continue
        orbit = sorted({index[tuple(sorted(g.conj(x, h) for h in s))] for x in g.elements()})
        seen.update(orbit)
        classes.append(tuple(orbit))  # subs is sorted, so orbit[0] is the least representative
    classes.sort(key=lambda c: (len(subs[c[0]]), subs[c[0]]))
    return SubgroupLattice(g, tuple(Subgroup(s) for s in subs), tuple(classes))


# ---------------------------------------------------------------------------
# Table of marks and the Burnside ring


def left_cosets(g: FiniteGroup, h: Subgroup) -> list[frozenset[int]]:
    seen: set[int] = set()
    out = []
    for x in g.elements():
        if x not in seen:
            c = frozenset(g.mul(x, y) for y in h.elements)
            seen |= c
            out.append(c)
    return out


@dataclass(frozen=True)
class MarksTable:
    marks: tuple[tuple[int, ...], ...]  # marks[H][K] = |(G/H)^K|

    def __len__(self):
        return len(self.marks)


def table_of_marks(lat: SubgroupLattice) -> MarksTable:
    g = lat.group
    reps = lat.representatives
    rows = []
    for h in reps:
        cosets = left_cosets(g, h)
        row = []
        for k in reps:
            row.append(sum(all(frozenset(g.mul(y, x) for x in c) == c for y in k.elements) for c in cosets))
        rows.append(tuple(row))
    n = len(reps)
    for i in range(n):
        if rows[i][i] == 0 or any(rows[i][j] for j in range(i + 1, n)):
            raise InvariantViolation("table of marks is not lower triangular")
    return MarksTable(tuple(rows))


class BurnsideRing:
    """A(G) with basis the classes of ``lat``; elements are :class:`BurnsideElement`."""

    def __init__(self, lat: SubgroupLattice):
        self.lattice = lat
        self.group = lat.group
        self.marks = table_of_marks(lat)

    def __len__(self):
        return len(self.lattice)

    def element(self, coeffs: Sequence[int]) -> BurnsideElement:
        return BurnsideElement(self, tuple(int(c) for c in coeffs))

    def zero(self) -> BurnsideElement:
        return self.element([0] * len(self))

    def basis(self, c: int) -> BurnsideElement:
        """The coset G/H for H in class ``c``."""
        return self.element([int(i == c) for i in range(len(self))])

    def one(self) -> BurnsideElement:
        return self.basis(len(self) - 1)

    def marks_vector(self, x: BurnsideElement) -> tuple[int, ...]:
        m = self.marks.marks
        n = len(self)
        return tuple(sum(x.coeffs[h] * m[h][k] for h in range(n)) for k in range(n))

    def from_marks(self, phi: Sequence[int]) -> BurnsideElement:
        """Back-substitution through the triangular table of marks."""
        m = self.marks.marks
        n = len(self)
        x = [0] * n
        for k in reversed(range(n)):
            rest = phi[k] - sum(x[h] * m[h][k] for h in range(k + 1, n))
            q, r = divmod(rest, m[k][k])
            if r:
                raise InvariantViolation("marks vector is not in the image of A(G)")
            x[k] = q
        return self.element(x)

    def mul(self, x: BurnsideElement, y: BurnsideElement) -> BurnsideElement:
        return burnside_mul(x, y, self.lattice, self.marks)

    def class_of_subgroup(self, elems: Iterable[int]) -> int:
        return self.lattice.class_of(elems)


@dataclass(frozen=True, eq=False)
class BurnsideElement:
    ring: BurnsideRing = field(repr=False)
    coeffs: tuple[int, ...]

    def _check(self, other: BurnsideElement):
        if other.ring is not self.ring:
            raise ValueError("elements of different Burnside rings")

    def __eq__(self, other):
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        return self.ring is other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: BurnsideElement) -> BurnsideElement:
        self._check(other)
        return self.ring.element([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: BurnsideElement) -> BurnsideElement:
        self._check(other)
        return self.ring.element([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> BurnsideElement:
        return self.ring.element([-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return self.ring.element([a * other for a in self.coeffs])
        self._check(other)
        return self.ring.mul(self, other)

    def __rmul__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        return self * n

    def augmentation(self) -> int:
        """Cardinality of the G-set, i.e. the sum of n_H [G:H]."""
        g = self.ring.group.order
        reps = self.ring.lattice.representatives
        return sum(c * (g // h.order) for c, h in zip(self.coeffs, reps))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        terms = [f"{c}[G/H{i}]" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"


def burnside_mul(x: BurnsideElement, y: BurnsideElement, lat: SubgroupLattice | None = None,
                 marks: MarksTable | None = None) -> BurnsideElement:
    """Product in A(G) computed pointwise on marks vectors."""
    ring = x.ring
    x._check(y)
    phi = [a * b for a, b in zip(ring.marks_vector(x), ring.marks_vector(y))]
    return ring.from_marks(phi)


def burnside_mul_doublecoset(x: BurnsideElement, y: BurnsideElement,
                             lat: SubgroupLattice | None = None) -> BurnsideElement:
    """Product in A(G) via G/H x G/K = sum over double cosets HgK of G/(H n gKg^-1)."""
    ring = x.ring
    x._check(y)
    g = ring.group
    reps = ring.lattice.representatives
    n = len(reps)
    table = {}

    def basis_product(i: int, j: int) -> list[int]:
        if (i, j) in table:
            return table[(i, j)]
        h, k = reps[i], reps[j]
        out = [0] * n
        seen: set[int] = set()
        for t in g.elements():
            if t in seen:
                continue
            double = {g.mul(g.mul(a, t), b) for a in h.elements for b in k.elements}
            seen |= double
            conj = {g.conj(t, b) for b in k.elements}
            out[ring.class_of_subgroup(set(h.elements) & conj)] += 1
        table[(i, j)] = out
        return out

    z = [0] * n
    for i, a in enumerate(x.coeffs):
        if not a:
            continue
        for j, b in enumerate(y.coeffs):
            if b:
                for c, v in enumerate(basis_product(i, j)):
                    z[c] += a * b * v
    return ring.element(z)
