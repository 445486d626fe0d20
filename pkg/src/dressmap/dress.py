"""The Dress map h: A(G) -> GW(k) for a concrete Galois extension L/k.

``h`` sends the coset G/H to the trace form of the fixed field L^H.  Since
the invariant vector of :mod:`dressmap.qforms` is additive and complete,
``ker h`` and the image of ``h`` are computed by integer linear algebra on
invariant coordinates; every such answer is re-checked with the
independent isometry test.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement, product
from math import isqrt

from .extensions import (
    GaloisExtensionDatum,
    TraceForm,
    fixed_field,
    sqrt_in_extension,
    trace_form,
)
from .fields import BaseField, InvariantViolation, is_prime
from .groups import BurnsideElement, BurnsideRing, Subgroup, burnside_mul
from .lattice import in_span, integer_kernel, solve_integer
from .qforms import (
    GWElement,
    QuadraticForm,
    equivalent,
    gw_is_zero,
    gw_is_zero_by_equivalence,
    invariant_vector,
    residue_keys,
)

DEFAULT_DEPTH = 2


@dataclass(frozen=True, eq=False)
class DressTable:
    ext: GaloisExtensionDatum
    ring: BurnsideRing
    trace_forms: tuple[TraceForm, ...]
    entries: tuple[GWElement, ...]  # h(G/H) per conjugacy class

    @property
    def field(self) -> BaseField:
        return self.ext.base

    @property
    def representatives(self) -> tuple[Subgroup, ...]:
        return self.ring.lattice.representatives

    def __call__(self, x: BurnsideElement) -> GWElement:
        out = GWElement.zero(self.field)
        for c, e in zip(x.coeffs, self.entries):
            if c:
                out = out + c * e
        return out

    def coset(self, h: Subgroup) -> BurnsideElement:
        return self.ring.basis(self.ring.lattice.class_of(h))


@lru_cache(maxsize=None)
def dress_table(ext: GaloisExtensionDatum) -> DressTable:
    lat = ext.lattice
    ring = BurnsideRing(lat)
    forms = tuple(trace_form(ext, h) for h in lat.representatives)
    for c, members in enumerate(lat.classes):
        if len(members) > 1:
            other = trace_form(ext, lat.subgroups[members[1]])
            if not equivalent(other.form, forms[c].form):
                raise InvariantViolation("conjugate subgroups gave inequivalent trace forms")
    entries = tuple(GWElement.of(f.form) for f in forms)
    t = DressTable(ext, ring, forms, entries)
    if not gw_is_zero(entries[-1] - GWElement.one(ext.base)):
        raise InvariantViolation("h(G/G) is not <1>")
    for e, h in zip(entries, lat.representatives):
        if e.rank != ext.group.order // h.order:
            raise InvariantViolation("rank of h(G/H) differs from [G:H]")
    return t


# ---------------------------------------------------------------------------
# invariant coordinates


def _system(k: BaseField, elements: list[GWElement], target: GWElement | None = None):
    """Rows of invariant coordinates (with moduli) for ``elements`` and ``target``."""
    vecs = [invariant_vector(e).coordinates() for e in elements]
    tvec = invariant_vector(target).coordinates() if target is not None else {}
    keys: dict[tuple, int] = {}
    for v in vecs + [tvec]:
        for key, (_, m) in v.items():
            if key[0] == "res":
                for rk, rm in residue_keys(key[1]):
                    keys[rk] = rm
            else:
                keys[key] = m
    order = sorted(keys, key=repr)
    a = [[v.get(key, (0, 0))[0] for v in vecs] for key in order]
    rhs = [tvec.get(key, (0, 0))[0] for key in order]
    return a, [keys[key] for key in order], rhs


@dataclass(frozen=True)
class KernelLattice:
    table: DressTable = field(repr=False)
    basis: tuple[BurnsideElement, ...]

    def contains(self, x: BurnsideElement) -> bool:
        return in_span([b.coeffs for b in self.basis], x.coeffs)

    @property
    def trivial(self) -> bool:
        return not self.basis


def kernel_lattice(t: DressTable) -> KernelLattice:
    a, moduli, _ = _system(t.field, list(t.entries))
    n = len(t.entries)
    vecs = integer_kernel(a, moduli, ncols=n)
    basis = tuple(t.ring.element(v) for v in vecs)
    for b in basis:
        img = t(b)
        if not gw_is_zero(img) or not gw_is_zero_by_equivalence(img):
            raise InvariantViolation(f"kernel vector {b.coeffs} does not map to zero")
        g = 0
        for c in b.coeffs:
            g = _gcd(g, c)
        for p in range(2, abs(g) + 1):
            if g % p == 0 and is_prime(p) and gw_is_zero(t(t.ring.element([c // p for c in b.coeffs]))):
                raise InvariantViolation("kernel basis is not saturated")
    return KernelLattice(t, basis)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


# ---------------------------------------------------------------------------
# sums of squares


def pythagoras_length(alpha: int, k: BaseField) -> int | None:
    """Least number of squares of k summing to an element of the class ``alpha``."""
    alpha = k.square_class(alpha)
    if alpha == 1:
        return 1
    if k.kind == "Fp":
        return 2
    if k.kind == "euclidean" or alpha < 0:
        return None
    m = alpha  # positive squarefree integer
    if all(p % 4 != 3 for p in _prime_divisors(m)):
        return 2
    return 4 if m % 8 == 7 else 3


def is_sum_of_squares(alpha: int, k: BaseField) -> bool:
    return pythagoras_length(alpha, k) is not None


def _prime_divisors(m: int) -> list[int]:
    out, d = [], 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def two_squares(alpha: int, k: BaseField) -> tuple[int, int]:
    """Nonzero a, b of k with a^2 + b^2 in the square class ``alpha``."""
    if k.kind == "Fp":
        p = k.p
        for a, b in product(range(1, p), repeat=2):
            if k.square_class(a * a + b * b) == k.square_class(alpha):
                return a, b
    elif k.kind == "Q" and alpha > 0:
        for c in range(1, 64):
            n = alpha * c * c
            for a in range(1, isqrt(n) + 1):
                b2 = n - a * a
                b = isqrt(b2)
                if b > 0 and b * b == b2:
                    return a, b
    raise ValueError(f"{alpha} is not a sum of two nonzero squares")


# ---------------------------------------------------------------------------
# quadratic subfields


def _index_two(t: DressTable) -> list[int]:
    g = t.ext.group.order
    return [c for c, h in enumerate(t.representatives) if 2 * h.order == g]


def quadratic_class(t: DressTable, c: int) -> int:
    """alpha with L^H = k(sqrt alpha) for an index-2 class ``c``.

    Read off the trace form <2, 2 alpha>, whose discriminant is alpha.
    """
    f = t.trace_forms[c].form
    if f.rank != 2:
        raise ValueError("not a quadratic subextension")
    return f.discriminant()


def quadratic_generator(ext: GaloisExtensionDatum, h: Subgroup):
    """(z, d): z in L^H outside k with z^2 = d in k, for [G:H] = 2."""
    ff = fixed_field(ext, h)
    if ff.degree != 2:
        raise ValueError("not a quadratic subextension")
    k = ext.base
    one = ff.one
    tr1 = ff.trace(one)
    for j in range(2):
        e = tuple(k(int(i == j)) for i in range(2))
        z = tuple(a - (ff.trace(e) / tr1) * b for a, b in zip(e, one))
        if any(z):
            zl = ff.embed(z)
            d = ext.to_scalar(ext.mul(zl, zl))
            if d is None:
                raise InvariantViolation("trace-zero element does not square into k")
            return zl, d
    raise InvariantViolation("fixed field of index 2 has no trace-zero element")


def _alpha_of(ext: GaloisExtensionDatum) -> int:
    if ext.degree != 2:
        raise ValueError("extension is not quadratic")
    t = dress_table(ext)
    return quadratic_class(t, 0)


# ---------------------------------------------------------------------------
# injectivity and surjectivity criteria


def injectivity_predicate(ext: GaloisExtensionDatum) -> bool:
    """L = k(sqrt alpha) with alpha not a sum of squares in k."""
    if ext.degree == 1:
        raise ValueError("the injectivity criterion concerns nontrivial extensions")
    return ext.degree == 2 and not is_sum_of_squares(_alpha_of(ext), ext.base)


def absorbed_square_classes(ext: GaloisExtensionDatum) -> set[int]:
    """Square classes of k that become squares in L (one per quadratic subfield, plus 1)."""
    t = dress_table(ext)
    k = ext.base
    out = {1}
    for c in _index_two(t):
        _, d = quadratic_generator(ext, t.representatives[c])
        out.add(k.square_class(d))
    return out


def surjectivity_criterion(ext: GaloisExtensionDatum) -> bool:
    """Whether every element of k becomes a square in L."""
    k = ext.base
    gens = k.square_class_generators()
    if gens is None:
        # k^x/(k^x)^2 is infinite but the absorbed classes form a finite set
        # (one per quadratic subfield), so some class of k stays a nonsquare;
        # for L = k the absorbed set is just {1}
        absorbed_square_classes(ext)
        return False
    if k.kind == "Fp":
        return all(sqrt_in_extension(ext, u) is not None for u in gens)
    return all(u in absorbed_square_classes(ext) for u in gens)


def image_preimage(t: DressTable, target: GWElement, depth: int = DEFAULT_DEPTH) -> BurnsideElement | None:
    """Some x in A(G) with h(x) = target, built from products of <= depth cosets."""
    ring = t.ring
    n = len(ring)
    gens = [ring.basis(i) for i in range(n)]
    for d in range(2, depth + 1):
        for combo in combinations_with_replacement(range(n), d):
            x = ring.basis(combo[0])
            for i in combo[1:]:
                x = burnside_mul(x, ring.basis(i))
            gens.append(x)
    images = [t(g) for g in gens]
    support = {p for e in images for p, _ in invariant_vector(e).residues}
    if any(p not in support for p, _ in invariant_vector(target).residues):
        return None
    a, moduli, rhs = _system(t.field, images, target)
    sol = solve_integer(a, rhs, moduli, ncols=len(gens))
    if sol is None:
        return None
    pre = ring.zero()
    for c, g in zip(sol, gens):
        if c:
            pre = pre + c * g
    diff = t(pre) - target
    if not gw_is_zero(diff) or not gw_is_zero_by_equivalence(diff):
        raise InvariantViolation("image preimage does not map to the target")
    return pre


def image_contains(t: DressTable, target: GWElement, depth: int = DEFAULT_DEPTH) -> bool:
    return image_preimage(t, target, depth) is not None


def generator_combination(t: DressTable, alpha: int) -> BurnsideElement | None:
    """The explicit preimage of <alpha> used when k is quadratically closed in L.

    With L^H = k(sqrt alpha): G/H - G/G if 2 is a square in k, otherwise
    (G/U - G/G) G/H - G/G where L^U = k(sqrt 2).
    """
    k = t.field
    alpha = k.square_class(alpha)
    quad = {quadratic_class(t, c): c for c in reversed(_index_two(t))}
    if alpha not in quad:
        return None
    one = t.ring.one()
    gh = t.ring.basis(quad[alpha])
    if k.is_square(2):
        return gh - one
    two = k.square_class(2)
    if two not in quad:
        return None
    gu = t.ring.basis(quad[two])
    return (gu - one) * gh - one


@dataclass(frozen=True)
class SurjectivityResult:
    value: bool | None
    note: str = ""
    preimages: tuple = ()  # (square class, BurnsideElement or None)


def surjective_exact(ext: GaloisExtensionDatum, depth: int = DEFAULT_DEPTH) -> SurjectivityResult:
    """Whether <c> lies in the image of h for every square class c of k."""
    k = ext.base
    classes = k.square_classes()
    if classes is None:
        return SurjectivityResult(None, "GW(Q) is not finitely generated; generator reachability is not decidable this way")
    t = dress_table(ext)
    pre = tuple((c, image_preimage(t, GWElement(k, (c,)), depth)) for c in classes)
    return SurjectivityResult(all(x is not None for _, x in pre), "", pre)


# ---------------------------------------------------------------------------
# kernel witnesses


def witness_odd_prime(ext: GaloisExtensionDatum, p: int) -> BurnsideElement:
    """G/e - p G/H for a subgroup H of order p."""
    g = ext.group.order
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if g % p:
        raise ValueError(f"{p} does not divide |G| = {g}")
    t = dress_table(ext)
    c = next(i for i, h in enumerate(t.representatives) if h.order == p)
    w = t.ring.basis(0) - p * t.ring.basis(c)
    _check_kernel(t, w)
    return w


def _two_power(n: int) -> int | None:
    e = 0
    while n > 1 and n % 2 == 0:
        n //= 2
        e += 1
    return e if n == 1 else None


def witness_two_power(ext: GaloisExtensionDatum) -> BurnsideElement:
    """4 G/G - 2 G/Gal(L/E) (cyclic quotient) or the five-term Klein element."""
    g = ext.group
    e = _two_power(g.order)
    if e is None or e < 2:
        raise ValueError(f"|G| = {g.order} is not a power of 2 greater than 2")
    t = dress_table(ext)
    lat = t.ring.lattice
    reps = t.representatives
    hc = next(c for c, h in enumerate(reps) if h.order == g.order // 4 and lat.is_normal(c))
    h = reps[hc]
    over = [c for c, k in enumerate(reps) if 2 * k.order == g.order and h.issubset(k)]
    cyclic = any(g.mul(x, x) not in h for x in g.elements())
    ring = t.ring
    if cyclic:
        if len(over) != 1:
            raise InvariantViolation("cyclic quotient of order 4 must have one intermediate subgroup")
        w = 4 * ring.one() - 2 * ring.basis(over[0])
    else:
        if len(over) != 3:
            raise InvariantViolation("Klein quotient must have three intermediate subgroups")
        w = 4 * ring.one() + 2 * ring.basis(hc)
        for c in over:
            w = w - 2 * ring.basis(c)
    _check_kernel(t, w)
    return w


def _check_kernel(t: DressTable, w: BurnsideElement):
    img = t(w)
    if not gw_is_zero(img) or not gw_is_zero_by_equivalence(img):
        raise InvariantViolation(f"witness {w.coeffs} does not map to zero")


@dataclass(frozen=True)
class CyclicCertificate:
    subgroup: Subgroup
    alpha: int
    a: int
    b: int


def verify_prop_cyclic(ext: GaloisExtensionDatum) -> CyclicCertificate:
    """For G cyclic of order 4: the quadratic subfield is k(sqrt(a^2 + b^2))."""
    g = ext.group
    if g.order != 4 or not any(g.element_order(x) == 4 for x in g.elements()):
        raise ValueError("Galois group is not cyclic of order 4")
    t = dress_table(ext)
    (c,) = _index_two(t)
    alpha = quadratic_class(t, c)
    k = ext.base
    length = pythagoras_length(alpha, k)
    if length is None or length > 2:
        raise InvariantViolation(f"quadratic subfield class {alpha} is not a sum of two squares")
    a, b = two_squares(alpha, k)
    return CyclicCertificate(t.representatives[c], alpha, a, b)


# ---------------------------------------------------------------------------
# a<1> = b<2, 2 alpha>


@dataclass(frozen=True)
class LemmaSquaresResult:
    alpha: int
    exists: bool
    minimal_pair: tuple[int, int] | None
    power_bound_ok: bool
    bound: int
    obstruction: str | None = None


def lemma_squares_check(alpha: int, k: BaseField | None = None, bound: int | None = None) -> LemmaSquaresResult:
    k = k or BaseField.rationals()
    alpha = k.square_class(alpha)
    length = pythagoras_length(alpha, k)
    exists = length is not None
    if bound is None:
        bound = 2 ** (length + 2) if exists else 64
    one = GWElement.one(k)
    two = GWElement(k, (2, k.mul_classes(2, alpha)))

    def holds(a, b):
        return gw_is_zero(a * one - b * two)

    found = next(((a, b) for a in range(1, bound + 1) for b in range(1, bound + 1) if holds(a, b)), None)
    if exists:
        if found is None:
            raise InvariantViolation(f"no relation a<1> = b<2, 2*{alpha}> up to {bound}")
        n = length - 1
        power_ok = equivalent(QuadraticForm(k, (1,) * 2**n), QuadraticForm(k, (alpha,) * 2**n))
        return LemmaSquaresResult(alpha, True, found, power_ok, bound)
    if found is not None:
        raise InvariantViolation(f"{alpha} is not a sum of squares yet {found} relates the forms")
    # rank forces a = 2b; find which invariant separates 2b<1> from b<2, 2 alpha>
    obstruction = None
    coords = invariant_vector(2 * one - two).coordinates()
    for key in sorted(coords, key=repr):
        v, m = coords[key]
        if key == ("rank",):
            continue
        if (v % m if m else v) != 0:
            obstruction = "signature" if key == ("signature",) else f"{key}"
            break
    return LemmaSquaresResult(alpha, False, None, False, bound, obstruction)


# ---------------------------------------------------------------------------
# checks and the report


def ring_homomorphism_ok(t: DressTable) -> bool:
    ring = t.ring
    n = len(ring)
    for i in range(n):
        for j in range(i, n):
            x, y = ring.basis(i), ring.basis(j)
            if not gw_is_zero(t(burnside_mul(x, y)) - t(x) * t(y)):
                return False
    return True


def augmentation_ok(t: DressTable, rng: random.Random, trials: int = 20) -> bool:
    n = len(t.ring)
    for _ in range(trials):
        x = t.ring.element([rng.randint(-5, 5) for _ in range(n)])
        if t(x).rank != x.augmentation():
            return False
    return True


def lam_ok(t: DressTable) -> bool:
    """tr_{L/k} = [L:E] tr_{E/k} for every E = L^H with |H| odd."""
    top = t.trace_forms[0].form
    for c, h in enumerate(t.representatives):
        if h.order % 2 and not equivalent(top, h.order * t.trace_forms[c].form):
            return False
    return True


def kernel_complete_small(t: DressTable, kernel: KernelLattice, radius: int = 8) -> bool:
    """Exhaustive scan of small coefficients (intended for |G| = 2)."""
    n = len(t.ring)
    for coeffs in product(range(-radius, radius + 1), repeat=n):
        x = t.ring.element(coeffs)
        if gw_is_zero(t(x)) != kernel.contains(x):
            return False
    return True


@dataclass(frozen=True)
class Witness:
    kind: str
    element: BurnsideElement
    in_kernel: bool
    detail: str = ""


@dataclass(frozen=True, eq=False)
class DressReport:
    ext: GaloisExtensionDatum
    table: DressTable
    kernel: KernelLattice
    injective: bool
    injectivity_predicate: bool | None
    surjectivity_criterion: bool
    surjective_exact: bool | None
    surjective_note: str
    witnesses: tuple[Witness, ...]
    cyclic: CyclicCertificate | None
    agreement: dict

    @property
    def all_agree(self) -> bool:
        return all(v is not False for v in self.agreement.values())


def analyze(ext: GaloisExtensionDatum, depth: int = DEFAULT_DEPTH, seed: int = 0) -> DressReport:
    t = dress_table(ext)
    kernel = kernel_lattice(t)
    injective = kernel.trivial
    order = ext.group.order
    pred = injectivity_predicate(ext) if ext.degree > 1 else None
    crit = surjectivity_criterion(ext)
    exact = surjective_exact(ext, depth)

    witnesses = []
    for p in range(3, order + 1, 2):
        if order % p == 0 and is_prime(p):
            w = witness_odd_prime(ext, p)
            witnesses.append(Witness("odd_prime", w, kernel.contains(w), f"p={p}"))
    e = _two_power(order)
    if e is not None and e >= 2:
        w = witness_two_power(ext)
        witnesses.append(Witness("two_power", w, kernel.contains(w)))
    cyc = None
    if order == 4 and any(ext.group.element_order(x) == 4 for x in ext.group.elements()):
        cyc = verify_prop_cyclic(ext)

    agreement = {
        "injectivity_criterion": None if pred is None else injective == pred,
        "surjectivity_criterion": None if exact.value is None else exact.value == crit,
        "ring_homomorphism": ring_homomorphism_ok(t),
        "augmentation": augmentation_ok(t, random.Random(seed)),
        "odd_index_trace": lam_ok(t),
        "witnesses_in_kernel": all(w.in_kernel for w in witnesses),
    }
    if order == 2:
        agreement["kernel_complete"] = kernel_complete_small(t, kernel)
    return DressReport(ext, t, kernel, injective, pred, crit, exact.value, exact.note,
                       tuple(witnesses), cyc, agreement)
