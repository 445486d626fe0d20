"""Exact integer linear algebra: column Hermite form, kernels, solvability.

Matrices are lists of rows of Python ints.  Congruence rows (a row that only
has to vanish modulo ``m``) are handled by adjoining one slack column per
such row carrying ``m``.
"""

from __future__ import annotations

from typing import Sequence

Matrix = list[list[int]]


def column_echelon(a: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, list[tuple[int, int]]]:
    """Column-style Hermite reduction.

    Returns ``(H, U, pivots)`` with ``A U = H``, ``U`` unimodular, the first
    ``len(pivots)`` columns of ``H`` in echelon form and the rest zero.
    ``pivots`` lists ``(row, column)`` pairs; pivot entries are positive and
    entries to the left of a pivot are reduced into ``[0, pivot)``.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    h = [list(r) for r in a]
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(dst, src, f):  # col[dst] -= f * col[src]
        for row in h:
            row[dst] -= f * row[src]
        for row in u:
            row[dst] -= f * row[src]

    def swap(i, j):
        for row in h:
            row[i], row[j] = row[j], row[i]
        for row in u:
            row[i], row[j] = row[j], row[i]

    def negate(j):
        for row in h:
            row[j] = -row[j]
        for row in u:
            row[j] = -row[j]

    pivots = []
    k = 0
    for r in range(m):
        if k == n:
            break
        while True:
            nz = [j for j in range(k, n) if h[r][j]]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(h[r][j]))
            if j0 != k:
                swap(j0, k)
            done = True
            for j in range(k + 1, n):
                if h[r][j]:
                    colop(j, k, h[r][j] // h[r][k])
                    if h[r][j]:
                        done = False
            if done:
                break
        if h[r][k] == 0:
            continue
        if h[r][k] < 0:
            negate(k)
        for j in range(k):
            colop(j, k, h[r][j] // h[r][k])
        pivots.append((r, k))
        k += 1
    return h, u, pivots


def hnf_basis(vectors: Sequence[Sequence[int]], dim: int) -> list[list[int]]:
    """Canonical basis (Hermite normal form) of the lattice spanned by ``vectors``."""
    if not vectors:
        return []
    cols = [[v[i] for v in vectors] for i in range(dim)]
    h, _, pivots = column_echelon(cols)
    return [[h[i][k] for i in range(dim)] for _, k in pivots]


def _with_moduli(a: Sequence[Sequence[int]], moduli: Sequence[int]) -> Matrix:
    slack = [i for i, m in enumerate(moduli) if m]
    out = []
    for i, row in enumerate(a):
        out.append(list(row) + [moduli[i] if i == s else 0 for s in slack])
    return out


def integer_kernel(a: Sequence[Sequence[int]], moduli: Sequence[int] | None = None, ncols: int | None = None) -> list[list[int]]:
    """Basis (in Hermite form) of ``{x in Z^n : A x = 0}``, row i taken mod ``moduli[i]`` when nonzero."""
    n = ncols if ncols is not None else len(a[0])
    if not a:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    moduli = list(moduli) if moduli is not None else [0] * len(a)
    b = _with_moduli(a, moduli)
    _, u, pivots = column_echelon(b)
    total = len(b[0])
    gens = [[u[i][j] for i in range(n)] for j in range(len(pivots), total)]
    return hnf_basis(gens, n)


def solve_integer(a: Sequence[Sequence[int]], rhs: Sequence[int], moduli: Sequence[int] | None = None,
                  ncols: int | None = None) -> list[int] | None:
    """Some integer ``x`` with ``A x = rhs`` (rows mod ``moduli``), or None."""
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    if not a:
        return [0] * n
    moduli = list(moduli) if moduli is not None else [0] * len(a)
    b = _with_moduli(a, moduli)
    h, u, pivots = column_echelon(b)
    y = [0] * len(b[0])
    for r, k in pivots:
        acc = rhs[r] - sum(h[r][j] * y[j] for j in range(k))
        if acc % h[r][k]:
            return None
        y[k] = acc // h[r][k]
    for r in range(len(b)):
        if sum(h[r][j] * y[j] for j in range(len(y))) != rhs[r]:
            return None
    x = [sum(u[i][j] * y[j] for j in range(len(y))) for i in range(len(b[0]))]
    return x[:n]


def in_span(basis: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    if not basis:
        return not any(v)
    cols = [[b[i] for b in basis] for i in range(len(v))]
    return solve_integer(cols, v) is not None


def matvec(a: Sequence[Sequence[int]], x: Sequence[int]) -> list[int]:
    return [sum(r * c for r, c in zip(row, x)) for row in a]
