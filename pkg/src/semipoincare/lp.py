"""Exact two-phase simplex over the rationals (Bland's rule, dense tableau).

Only desk-scale systems appear here (a few dozen variables), so a plain
Fraction tableau is plenty.
"""

from __future__ import annotations

from fractions import Fraction


class Unbounded(Exception):
    pass


def _pivot(T, basis, obj, r, j):
    row = T[r]
    p = row[j]
    T[r] = row = [v / p for v in row]
    for i, other in enumerate(T):
        if i != r and other[j]:
            f = other[j]
            T[i] = [a - f * b for a, b in zip(other, row)]
    if obj[j]:
        f = obj[j]
        obj[:] = [a - f * b for a, b in zip(obj, row)]
    basis[r] = j


def _run(T, basis, obj, allowed):
    while True:
        entering = next((j for j in allowed if obj[j] < 0), None)
        if entering is None:
            return
        best = None
        for i, row in enumerate(T):
            a = row[entering]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            raise Unbounded
        _pivot(T, basis, obj, best[1], entering)


def solve(A, b, c=None):
    """Minimize c.x subject to A x = b, x >= 0.

    Returns the optimal ``x`` as Fractions, or ``None`` when infeasible.
    With ``c`` omitted any feasible point is returned.  Raises Unbounded
    if the objective has no minimum.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return [Fraction(0)] * n
    T = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        T.append(row + [Fraction(int(k == i)) for k in range(m)] + [rhs])
    basis = [n + i for i in range(m)]
    obj = [-sum(T[i][j] for i in range(m)) for j in range(n)] + [Fraction(0)] * m
    obj.append(-sum(T[i][-1] for i in range(m)))
    _run(T, basis, obj, range(n))
    if obj[-1] != 0:
        return None
    for i in range(m):
        if basis[i] >= n:
            j = next((j for j in range(n) if T[i][j] != 0), None)
            if j is not None:
                _pivot(T, basis, obj, i, j)
    if c is not None:
        cost = [Fraction(v) for v in c] + [Fraction(0)] * m
        obj = cost + [Fraction(0)]
        for i, bi in enumerate(basis):
            if obj[bi]:
                f = obj[bi]
                obj = [a - f * v for a, v in zip(obj, T[i])]
        _run(T, basis, obj, range(n))
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = T[i][-1]
    # guard against any arithmetic slip: the answer must satisfy the system exactly
    assert all(v >= 0 for v in x)
    assert all(sum(Fraction(a) * v for a, v in zip(A[i], x)) == b[i] for i in range(m))
    return x


def nonnegative_solution(rows, rhs):
    """Some x >= 0 with rows @ x == rhs, or None."""
    return solve(rows, rhs)
