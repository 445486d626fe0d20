import itertools
import random

from hypothesis import given, settings
from hypothesis import strategies as st

from dressmap.lattice import column_echelon, hnf_basis, in_span, integer_kernel, matvec, solve_integer

matrices = st.integers(1, 3).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)))


def det(u):
    if len(u) == 1:
        return u[0][0]
    return sum((-1) ** j * u[0][j] * det([r[:j] + r[j + 1:] for r in u[1:]]) for j in range(len(u)))


def satisfies(a, moduli, x, rhs=None):
    rhs = rhs or [0] * len(a)
    for row, m, t in zip(a, moduli, rhs):
        v = sum(c * xi for c, xi in zip(row, x)) - t
        if (v % m if m else v):
            return False
    return True


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_column_echelon_certificate(a):
    h, u, pivots = column_echelon(a)
    n = len(a[0])
    assert [[sum(a[i][k] * u[k][j] for k in range(n)) for j in range(n)] for i in range(len(a))] == h
    assert abs(det(u)) == 1
    for idx, (r, k) in enumerate(pivots):
        assert k == idx and h[r][k] > 0
        assert all(0 <= h[r][j] < h[r][k] for j in range(k))
        assert all(h[i][k] == 0 for i in range(r))
    assert all(h[i][j] == 0 for i in range(len(a)) for j in range(len(pivots), n))


@settings(max_examples=100, deadline=None)
@given(matrices, st.data())
def test_kernel_against_brute_force(a, data):
    moduli = data.draw(st.lists(st.sampled_from([0, 0, 2, 3, 4]), min_size=len(a), max_size=len(a)))
    n = len(a[0])
    basis = integer_kernel(a, moduli, n)
    for b in basis:
        assert satisfies(a, moduli, b)
    for x in itertools.product(range(-2, 3), repeat=n):
        assert satisfies(a, moduli, x) == in_span(basis, x)


def test_kernel_examples():
    assert integer_kernel([[1, 1]], [2], 2) == [[1, 1], [0, 2]]
    assert integer_kernel([[1, 2, 3]]) == [[1, 1, -1], [0, 3, -2]]
    assert integer_kernel([], None, 2) == [[1, 0], [0, 1]]
    assert integer_kernel([[1, 0], [0, 1]]) == []


def test_solve_integer():
    assert solve_integer([[2, 0]], [1]) is None
    assert solve_integer([[2, 0]], [1], [4]) is None
    x = solve_integer([[2, 0]], [1], [3])
    assert x is not None and (2 * x[0] - 1) % 3 == 0
    rng = random.Random(2)
    for _ in range(200):
        m, n = rng.randint(1, 3), rng.randint(1, 4)
        a = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(m)]
        moduli = [rng.choice([0, 2, 5]) for _ in range(m)]
        x0 = [rng.randint(-3, 3) for _ in range(n)]
        rhs = matvec(a, x0)
        x = solve_integer(a, rhs, moduli)
        assert x is not None and satisfies(a, moduli, x, rhs)


def test_hnf_is_canonical():
    assert hnf_basis([[2, 4], [1, 2]], 2) == [[1, 2]]
    assert hnf_basis([[2, 0], [0, 3]], 2) == hnf_basis([[2, 3], [4, 3], [0, 6]], 2)
    assert hnf_basis([], 3) == []
