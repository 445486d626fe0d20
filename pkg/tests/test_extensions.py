from fractions import Fraction
from itertools import product

import pytest

from dressmap.extensions import (
    ExtensionError,
    cyclotomic,
    cyclotomic_polynomial,
    euclidean_gaussian,
    finite_field_tower,
    fixed_field,
    from_modulus,
    irreducible_polynomial,
    is_irreducible_mod_p,
    multiquadratic,
    quotient_extension,
    sqrt_in_extension,
    trace_form,
)
from dressmap.fields import BaseField, ModP
from dressmap.groups import Subgroup
from dressmap.qforms import equivalent, form

Q = BaseField.rationals()


def trivial(ext):
    return Subgroup((ext.group.identity,))


def whole(ext):
    return Subgroup(tuple(ext.group.elements()))


def test_multiquadratic():
    e = multiquadratic(Q, [2])
    assert e.degree == 2 and e.group.order == 2
    v = multiquadratic(Q, [2, 3])
    assert v.degree == 4 and v.group.is_abelian()
    assert all(v.group.element_order(g) <= 2 for g in v.group.elements())
    quad = [h for h in v.lattice.representatives if h.order == 2]
    alphas = sorted(trace_form(v, h).form.discriminant() for h in quad)
    assert alphas == [2, 3, 6]
    with pytest.raises(ExtensionError, match="depend"):
        multiquadratic(Q, [2, 2])
    with pytest.raises(ExtensionError):
        multiquadratic(Q, [2, 3, 6])
    with pytest.raises(ExtensionError):
        multiquadratic(Q, [9])


@pytest.mark.parametrize("n, degree, cyclic", [(4, 2, True), (5, 4, True), (7, 6, True), (8, 4, False), (12, 4, False), (16, 8, False)])
def test_cyclotomic_groups(n, degree, cyclic):
    e = cyclotomic(n)
    assert e.degree == degree
    has_generator = any(e.group.element_order(g) == degree for g in e.group.elements())
    assert has_generator == cyclic


def test_cyclotomic_bounds():
    with pytest.raises(ExtensionError):
        cyclotomic(2)
    with pytest.raises(ExtensionError):
        cyclotomic(31)
    assert cyclotomic_polynomial(12) == [1, 0, -1, 0, 1]


def test_finite_field_towers():
    for p, n in [(3, 2), (3, 3), (5, 4), (7, 1)]:
        e = finite_field_tower(p, n)
        assert e.degree == n
        assert n == 1 or any(e.group.element_order(g) == n for g in e.group.elements())
    e = finite_field_tower(5, 4)
    assert [h.order for h in e.lattice.representatives] == [1, 2, 4]
    assert fixed_field(e, e.lattice.representatives[1]).degree == 2


def test_irreducible_polynomials_brute_force():
    p = 3
    for n in (2, 3):
        f = irreducible_polynomial(p, n)
        assert len(f) == n + 1 and f[-1] == 1
        # no roots, and for n <= 3 that suffices
        assert all(sum(c * x**i for i, c in enumerate(f)) != 0 for x in map(lambda v: ModP(v, p), range(p)))
    assert not is_irreducible_mod_p([ModP(c, 5) for c in (1, 0, 1)], 5)  # x^2 + 1 = (x - 2)(x + 2)
    assert is_irreducible_mod_p([ModP(c, 3) for c in (1, 0, 1)], 3)


def test_fixed_fields():
    for e in (cyclotomic(7), multiquadratic(Q, [2, 3]), finite_field_tower(3, 6)):
        assert fixed_field(e, trivial(e)).degree == e.degree
        assert fixed_field(e, whole(e)).degree == 1
        for h in e.lattice.representatives:
            assert fixed_field(e, h).degree * h.order == e.group.order


def test_fixed_field_of_sqrt6():
    e = multiquadratic(Q, [2, 3])
    # basis 1, sqrt2, sqrt3, sqrt6; sqrt6 is fixed by the automorphism negating both sqrt2 and sqrt3
    k = e.base
    sqrt6 = tuple(map(k, (0, 0, 0, 1)))
    stabilizers = [g for g in e.group.elements() if g != e.group.identity and e.apply(g, sqrt6) == sqrt6]
    assert len(stabilizers) == 1
    h = Subgroup(tuple(sorted({e.group.identity, stabilizers[0]})))
    ff = fixed_field(e, h)
    ff.coordinates(sqrt6)
    ff.coordinates(e.one)
    with pytest.raises(ValueError):
        ff.coordinates(tuple(map(k, (0, 1, 0, 0))))
    assert equivalent(trace_form(e, h).form, form(Q, 2, 12))


@pytest.mark.parametrize("alpha", [-1, 2, -5, 5, 7, -7, 30])
def test_trace_form_quadratic(alpha):
    e = multiquadratic(Q, [alpha])
    assert equivalent(trace_form(e, trivial(e)).form, form(Q, 2, 2 * alpha))
    assert trace_form(e, whole(e)).form == form(Q, 1)


@pytest.mark.parametrize("a1, a2", [(2, 3), (-1, 2), (-1, -3), (5, 7)])
def test_trace_form_biquadratic(a1, a2):
    e = multiquadratic(Q, [a1, a2])
    assert equivalent(trace_form(e, trivial(e)).form, form(Q, 1, a1, a2, a1 * a2))


def test_trace_form_euclidean():
    e = euclidean_gaussian()
    assert e.group.order == 2
    t = trace_form(e, trivial(e)).form
    assert t.rank == 2 and t.signature() == 0
    assert trace_form(e, whole(e)).form == form(e.base, 1)


def test_trace_form_signature_counts_real_embeddings():
    # totally imaginary cyclotomic fields have signature 0; the real subfield is totally real
    for n in (5, 7, 8, 12, 16):
        e = cyclotomic(n)
        assert trace_form(e, trivial(e)).form.signature() == 0
        conj = next(g for g in e.group.elements()
                    if g != e.group.identity and e.apply(g, e.basis_vector(1)) == _inverse_zeta(e))
        h = Subgroup(tuple(sorted({e.group.identity, conj})))
        t = trace_form(e, h).form
        assert t.signature() == t.rank == e.degree // 2


def _inverse_zeta(e):
    z = e.basis_vector(1)
    n_order = next(m for m in range(2, 40) if e.power(z, m) == e.one)
    return e.power(z, n_order - 1)


def test_trace_form_finite_field_gram():
    # F_9 = F_3[x]/(f): direct Gram of Tr(x^(i+j)) computed from Frobenius
    e = finite_field_tower(3, 2)
    t = trace_form(e, trivial(e))
    k = e.base
    gram = [[e.trace(e.mul(e.basis_vector(i), e.basis_vector(j))) for j in range(2)] for i in range(2)]
    assert [list(r) for r in t.gram] == gram
    frob = [g for g in e.group.elements() if g != e.group.identity][0]
    for coords in product(range(3), repeat=2):
        x = tuple(k(c) for c in coords)
        assert e.to_scalar(e.add(x, e.apply(frob, x))) == e.trace(x)


def test_lam_form():
    # the trace form of Q(zeta7) is 3 times that of its quadratic subfield Q(sqrt-7)
    e = cyclotomic(7)
    c3 = next(h for h in e.lattice.representatives if h.order == 3)
    sub = trace_form(e, c3).form
    assert equivalent(sub, form(Q, 2, -14))
    assert equivalent(trace_form(e, trivial(e)).form, 3 * sub)


def test_custom_s3_extension():
    images = [[0, 1], [0, "1/2", 0, 0, "-1/12"], [0, "-1/2", 0, 0, "-1/12"],
              [0, -1], [0, "-1/2", 0, 0, "1/12"], [0, "1/2", 0, 0, "1/12"]]
    e = from_modulus(Q, [108, 0, 0, 0, 0, 0, 1], [[Fraction(c) for c in a] for a in images])
    assert e.degree == 6 and not e.group.is_abelian()
    orders = sorted(h.order for h in e.lattice.representatives)
    assert orders == [1, 2, 3, 6]
    c2 = next(h for h in e.lattice.representatives if h.order == 2)
    c3 = next(h for h in e.lattice.representatives if h.order == 3)
    # Q(cbrt2): Gram [[3,0,0],[0,0,6],[0,6,0]]; Q(zeta3) = Q(sqrt-3)
    assert equivalent(trace_form(e, c2).form, form(Q, 3, 1, -1))
    assert equivalent(trace_form(e, c3).form, form(Q, 2, -6))


def test_custom_rejects_non_galois():
    with pytest.raises(ExtensionError):
        from_modulus(Q, [-2, 0, 0, 1], [[0, 1]])  # Q(cbrt2) has a single automorphism
    with pytest.raises(ExtensionError):
        from_modulus(Q, [1, 0, 1], [[0, 1], [0, 1]])
    with pytest.raises(ExtensionError):
        from_modulus(Q, [1, 0, 1], [[0, 1], [1, 1]])


def test_quotient_extension():
    e = cyclotomic(7)
    c3 = next(h for h in e.lattice.representatives if h.order == 3)
    q = quotient_extension(e, c3)
    assert q.degree == 2
    assert equivalent(trace_form(q, trivial(q)).form, form(Q, 2, -14))
    s3 = from_modulus(Q, [108, 0, 0, 0, 0, 0, 1], [[Fraction(c) for c in a] for a in
                      [[0, 1], [0, "1/2", 0, 0, "-1/12"], [0, "-1/2", 0, 0, "-1/12"],
                       [0, -1], [0, "-1/2", 0, 0, "1/12"], [0, "1/2", 0, 0, "1/12"]]])
    c2 = next(h for h in s3.lattice.representatives if h.order == 2)
    with pytest.raises(ExtensionError):
        quotient_extension(s3, c2)


def test_cyclic_quartic_inside_zeta16():
    e = cyclotomic(16)
    for h in e.lattice.representatives:
        if h.order != 2:
            continue
        q = quotient_extension(e, h)
        if any(q.group.element_order(g) == 4 for g in q.group.elements()):
            quad = next(x for x in q.lattice.representatives if x.order == 2)
            t = trace_form(q, quad).form
            assert t.discriminant() == 2
            return
    pytest.fail("no cyclic quartic subextension found")


def test_square_roots_in_finite_fields():
    e = finite_field_tower(5, 2)
    for c in range(1, 5):
        x = sqrt_in_extension(e, c)
        assert x is not None and e.mul(x, x) == e.scalar(c)
    e = finite_field_tower(3, 3)
    assert sqrt_in_extension(e, 2) is None
    big = finite_field_tower(13, 4)  # 28561 elements, Tonelli-Shanks path
    x = sqrt_in_extension(big, 2)
    assert x is not None and big.mul(x, x) == big.scalar(2)
    with pytest.raises(ValueError):
        sqrt_in_extension(cyclotomic(4), -1)
