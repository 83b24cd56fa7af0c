"""Exact rank of sparse integer matrices over Q or GF(p).

Rows are dicts ``{column: value}``.  Over GF(p) we keep monic pivot rows;
over Q we stay in the integers with fraction-free row operations and strip
the row content after each step so entries stay small.
"""

from __future__ import annotations

from math import gcd


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def check_characteristic(characteristic: int) -> int:
    if characteristic != 0 and not is_prime(characteristic):
        raise ValueError(f"characteristic must be 0 or a prime, got {characteristic}")
    return characteristic


def _rank_mod_p(rows, p):
    pivots = {}
    for row in rows:
        r = {c: v % p for c, v in row.items() if v % p}
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(r[c], -1, p)
                pivots[c] = {k: (v * inv) % p for k, v in r.items()}
                break
            f = r[c]
            for k, v in piv.items():
                nv = (r.get(k, 0) - f * v) % p
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return len(pivots)


def _primitive(r):
    g = 0
    for v in r.values():
        g = gcd(g, v)
        if g == 1:
            return r
    return {k: v // g for k, v in r.items()}


def _rank_rational(rows):
    pivots = {}
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                pivots[c] = _primitive(r)
                break
            a, b = piv[c], r[c]
            # r <- a*r - b*piv kills column c
            new = {k: a * v for k, v in r.items()}
            for k, v in piv.items():
                nv = new.get(k, 0) - b * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            r = _primitive(new) if new else new
    return len(pivots)


def rank(rows, characteristic: int = 0) -> int:
    """Rank of the matrix whose rows are ``rows`` over Q (0) or GF(p)."""
    rows = list(rows)
    if not rows:
        return 0
    if characteristic == 0:
        return _rank_rational(rows)
    return _rank_mod_p(rows, characteristic)


def dense_rank(matrix, characteristic: int = 0) -> int:
    rows = [{j: v for j, v in enumerate(row) if v} for row in matrix]
    return rank(rows, characteristic)
