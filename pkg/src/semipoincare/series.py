"""Exact Laurent polynomials and truncated power series over the ambient group.

Coefficients are Python ints.  Exponents are ambient-group tuples, so
multiplication adds exponents with torsion reduction.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable

from .errors import ExpansionError


class Poly:
    """Finite sum of c * t^m with m in the ambient group and c != 0."""

    __slots__ = ("group", "terms")

    def __init__(self, group, terms=None):
        self.group = group
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def from_pairs(cls, group, pairs: Iterable) -> "Poly":
        acc = defaultdict(int)
        for m, c in pairs:
            acc[group.element(m)] += c
        return cls(group, acc)

    @classmethod
    def one(cls, group) -> "Poly":
        return cls(group, {group.zero: 1})

    @classmethod
    def monomial(cls, group, m, coeff: int = 1) -> "Poly":
        return cls(group, {group.element(m): coeff})

    @classmethod
    def one_minus(cls, group, e) -> "Poly":
        """1 - t^e."""
        return cls.from_pairs(group, [(group.zero, 1), (e, -1)])

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            return self == Poly(self.group, {self.group.zero: other})
        return isinstance(other, Poly) and self.group == other.group and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        parts = [f"{c}*t^{list(m)}" for m, c in sorted(self.terms.items())]
        return "Poly(" + " + ".join(parts) + ")"

    def coeff(self, m) -> int:
        return self.terms.get(m, 0)

    def _combine(self, other, sign):
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc.get(m, 0) + sign * c
        return Poly(self.group, acc)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return Poly(self.group, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return Poly(self.group, {m: c * other for m, c in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        add = self.group.add
        acc = defaultdict(int)
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                acc[add(a, b)] += ca * cb
        return Poly(self.group, acc)

    __rmul__ = __mul__

    def bar(self) -> "Poly":
        """p(1/t): every exponent replaced by its negative in the group."""
        neg = self.group.neg
        return Poly(self.group, {neg(m): c for m, c in self.terms.items()})

    def shift(self, g) -> "Poly":
        add = self.group.add
        return Poly(self.group, {add(m, g): c for m, c in self.terms.items()})

    def truncate(self, degree, N: int) -> "Poly":
        return Poly(self.group, {m: c for m, c in self.terms.items() if degree(m) <= N})

    def min_degree(self, degree):
        return min((degree(m) for m in self.terms), default=None)

    def max_degree(self, degree):
        return max((degree(m) for m in self.terms), default=None)

    def to_json(self, key=None) -> list:
        items = sorted(self.terms.items(), key=(lambda kv: key(kv[0])) if key else None)
        return [{"exp": list(m), "coeff": c} for m, c in items]

    @classmethod
    def from_json(cls, group, data) -> "Poly":
        return cls.from_pairs(group, [(d["exp"], d["coeff"]) for d in data])


def poly_mul(a: Poly, b: Poly) -> Poly:
    return a * b


def bar(p: Poly) -> Poly:
    return p.bar()


def product_one_minus(group, exponents) -> Poly:
    """Prod over e of (1 - t^e)."""
    out = Poly.one(group)
    for e in exponents:
        out = out * Poly.one_minus(group, e)
    return out


class TruncatedSeries:
    """Power series known exactly for every exponent of lambda-degree <= bound."""

    __slots__ = ("semigroup", "terms", "bound")

    def __init__(self, semigroup, terms, bound: int):
        deg = semigroup.degree
        self.semigroup = semigroup
        self.bound = bound
        self.terms = {m: c for m, c in terms.items() if c and deg(m) <= bound}

    def __repr__(self):
        key = self.semigroup.sort_key
        body = ", ".join(f"{list(m)}: {c}" for m, c in sorted(self.terms.items(), key=lambda kv: key(kv[0])))
        return f"TruncatedSeries({{{body}}}, bound={self.bound})"

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedSeries)
            and self.bound == other.bound
            and self.terms == other.terms
        )

    def coeff(self, m) -> int:
        if self.semigroup.degree(m) > self.bound:
            raise ValueError(f"coefficient of {m} lies beyond bound {self.bound}")
        return self.terms.get(m, 0)

    def _min_degree(self):
        deg = self.semigroup.degree
        return min((deg(m) for m in self.terms), default=self.bound + 1)

    def _combine(self, other, sign):
        other = _as_series(other, self.semigroup, self.bound)
        bound = min(self.bound, other.bound)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc.get(m, 0) + sign * c
        return TruncatedSeries(self.semigroup, acc, bound)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return TruncatedSeries(self.semigroup, {m: -c for m, c in self.terms.items()}, self.bound)

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncatedSeries(self.semigroup, {m: c * other for m, c in self.terms.items()}, self.bound)
        deg = self.semigroup.degree
        add = self.semigroup.ambient.add
        if isinstance(other, Poly):
            if not other.terms:
                return TruncatedSeries(self.semigroup, {}, self.bound)
            bound = self.bound + other.min_degree(deg)
        else:
            bound = min(self.bound + other._min_degree(), other.bound + self._min_degree())
        acc = defaultdict(int)
        for a, ca in self.terms.items():
            da = deg(a)
            for b, cb in other.terms.items():
                if da + deg(b) <= bound:
                    acc[add(a, b)] += ca * cb
        return TruncatedSeries(self.semigroup, acc, bound)

    __rmul__ = __mul__

    def truncate(self, N: int) -> "TruncatedSeries":
        return TruncatedSeries(self.semigroup, self.terms, min(N, self.bound))

    def first_mismatch(self, other, bound=None):
        """Smallest exponent (canonical order) where the two series differ, up to the common bound."""
        other = _as_series(other, self.semigroup, self.bound)
        limit = min(self.bound, other.bound)
        if bound is not None:
            limit = min(limit, bound)
        deg = self.semigroup.degree
        bad = [
            m
            for m in set(self.terms) | set(other.terms)
            if deg(m) <= limit and self.terms.get(m, 0) != other.terms.get(m, 0)
        ]
        return min(bad, key=self.semigroup.sort_key) if bad else None

    def agrees(self, other, bound=None) -> bool:
        return self.first_mismatch(other, bound) is None

    def as_poly(self) -> Poly:
        return Poly(self.semigroup.ambient, self.terms)

    def to_json(self) -> dict:
        return {"terms": self.as_poly().to_json(self.semigroup.sort_key), "bound": self.bound}


def _as_series(x, semigroup, bound):
    if isinstance(x, TruncatedSeries):
        return x
    if isinstance(x, Poly):
        # an exact polynomial is known to every degree
        return TruncatedSeries(semigroup, x.terms, max(bound, x.max_degree(semigroup.degree) or 0))
    raise TypeError(f"cannot combine a series with {type(x).__name__}")


class RationalExpr:
    """numerator / prod(1 - t^e), kept in raw factored form."""

    __slots__ = ("numerator", "denominator_factors")

    def __init__(self, numerator: Poly, denominator_factors=()):
        self.numerator = numerator
        self.denominator_factors = tuple(denominator_factors)

    def __repr__(self):
        return f"RationalExpr({self.numerator!r} / prod(1 - t^e) over {list(self.denominator_factors)})"

    def denominator(self) -> Poly:
        return product_one_minus(self.numerator.group, self.denominator_factors)


def expand(r: RationalExpr, S, N: int) -> TruncatedSeries:
    """Expand the fraction in the completed semigroup ring, exact up to degree N."""
    deg = S.degree
    add = S.ambient.add
    for e in r.denominator_factors:
        if deg(e) <= 0:
            raise ExpansionError(f"1 - t^{e} is not invertible: lambda({e}) = {deg(e)} <= 0")
    current = {m: c for m, c in r.numerator.terms.items() if deg(m) <= N}
    for e in r.denominator_factors:
        step = deg(e)
        out = defaultdict(int)
        for x, c in current.items():
            d = deg(x)
            while d <= N:
                out[x] += c
                x = add(x, e)
                d += step
        current = out
    return TruncatedSeries(S, current, N)


def indicator(B, S, N: int) -> TruncatedSeries:
    """Sum of t^m over m in B, known up to degree N."""
    return TruncatedSeries(S, {m: 1 for m in B}, N)


class BivariatePoly:
    """Finite sum of c * v^j * t^m, keyed by (j, m)."""

    __slots__ = ("group", "terms")

    def __init__(self, group, terms=None):
        self.group = group
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    def __eq__(self, other):
        return isinstance(other, BivariatePoly) and self.terms == other.terms

    def __repr__(self):
        parts = [f"{c}*v^{j}*t^{list(m)}" for (j, m), c in sorted(self.terms.items())]
        return "BivariatePoly(" + (" + ".join(parts) or "0") + ")"

    def evaluate_v(self, v: int) -> Poly:
        acc = defaultdict(int)
        for (j, m), c in self.terms.items():
            acc[m] += c * v**j
        return Poly(self.group, acc)

    def coeff(self, j: int, m) -> int:
        return self.terms.get((j, m), 0)

    def to_json(self, key=None) -> list:
        items = sorted(
            self.terms.items(), key=(lambda kv: (kv[0][0], key(kv[0][1]))) if key else None
        )
        return [{"v": j, "exp": list(m), "coeff": c} for (j, m), c in items]
