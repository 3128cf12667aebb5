"""Gaussian elimination over an arbitrary exact field.

Entries only need ``+ - * /`` and truthiness for the zero test, so the same
code runs over ``Fraction``, ``GaussRat`` and ``Scalar``.
"""

from __future__ import annotations

from .errors import SingularBlock


def _zero_like(x):
    return x - x


def rref(rows):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def inverse(matrix):
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("inverse of a non-square matrix")
    if n == 0:
        return []
    one = _zero_like(matrix[0][0]) + 1
    zero = _zero_like(one)
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(matrix)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularBlock("matrix is singular")
    return [row[n:] for row in red]


def solve(columns_matrix, rhs):
    """Solve ``M x = rhs``; returns one solution or ``None`` if inconsistent."""
    sol, _ = solve_with_nullspace(columns_matrix, rhs)
    return sol


def solve_with_nullspace(matrix, rhs):
    """Particular solution (free variables zero) and a nullspace basis."""
    if not matrix:
        return [], []
    ncols = len(matrix[0])
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None, []
    zero = _zero_like(rhs[0]) if rhs else 0
    x = [zero] * ncols
    for i, c in enumerate(pivots):
        x[c] = red[i][ncols]
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = zero + 1
        for i, c in enumerate(pivots):
            v[c] = -red[i][f]
        basis.append(v)
    return x, basis
