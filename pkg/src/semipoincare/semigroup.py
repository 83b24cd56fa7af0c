"""Finitely generated positive cancellative commutative semigroups.

Elements of the ambient group Z^d x Z/t_1 x ... x Z/t_k are plain tuples of
length d + k; the free coordinates come first and torsion coordinates are
kept in the canonical range [0, t_i).  Tuples give hashing, equality and the
canonical lexicographic order for free.
"""

from __future__ import annotations

import operator
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from . import lp
from .errors import BudgetError, InvalidComplexError, MembershipError, PositivityError
from .linalg import dense_rank

DEFAULT_MEMO_CAP = 10**6
DEFAULT_ENUM_CAP = 2 * 10**6

Element = tuple


@dataclass(frozen=True)
class AmbientGroup:
    free_rank: int
    torsion_orders: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion_orders", tuple(int(t) for t in self.torsion_orders))
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        if any(t < 2 for t in self.torsion_orders):
            raise ValueError("torsion orders must be >= 2")

    @property
    def width(self) -> int:
        return self.free_rank + len(self.torsion_orders)

    @cached_property
    def zero(self) -> Element:
        return (0,) * self.width

    def element(self, coords: Iterable[int]) -> Element:
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.width:
            raise ValueError(f"expected {self.width} coordinates, got {len(coords)}")
        return self._reduce(coords)

    def _reduce(self, coords):
        if not self.torsion_orders:
            return coords
        d = self.free_rank
        return coords[:d] + tuple(c % t for c, t in zip(coords[d:], self.torsion_orders))

    def add(self, a: Element, b: Element) -> Element:
        return self._reduce(tuple(map(operator.add, a, b)))

    def sub(self, a: Element, b: Element) -> Element:
        return self._reduce(tuple(map(operator.sub, a, b)))

    def neg(self, a: Element) -> Element:
        return self._reduce(tuple(-x for x in a))

    def scale(self, a: Element, k: int) -> Element:
        return self._reduce(tuple(k * x for x in a))

    def sum(self, elements: Iterable[Element]) -> Element:
        return reduce(self.add, elements, self.zero)

    def free(self, g: Element) -> tuple:
        return g[: self.free_rank]

    def torsion(self, g: Element) -> tuple:
        return g[self.free_rank :]


@dataclass(frozen=True)
class SemigroupPresentation:
    ambient: AmbientGroup
    generators: tuple

    def __post_init__(self):
        gens = tuple(self.ambient.element(g) for g in self.generators)
        if not gens:
            raise ValueError("at least one generator is required")
        if self.ambient.zero in gens:
            raise ValueError("the zero element cannot be a generator")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def numerical(cls, *gens: int) -> "SemigroupPresentation":
        return cls(AmbientGroup(1), tuple((g,) for g in gens))


def _dedupe(items):
    seen = set()
    out = []
    for x in items:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return tuple(out)


def _clear_denominators(values: Sequence[Fraction]) -> tuple:
    den = lcm(*(Fraction(v).denominator for v in values)) if values else 1
    ints = [int(Fraction(v) * den) for v in values]
    g = reduce(gcd, ints, 0) or 1
    return tuple(v // g for v in ints)


def find_grading(ambient: AmbientGroup, generators: Sequence[Element]) -> tuple:
    """Smallest integer functional on the free part that is >= 1 on every generator.

    Solved as an exact rational LP minimizing the total degree of the
    generators subject to lambda(g) >= 1.  Raises PositivityError with a
    nonnegative integer relation among the generators when impossible.
    """
    d = ambient.free_rank
    frees = [ambient.free(g) for g in generators]
    n = len(frees)
    for i, f in enumerate(frees):
        if not any(f):
            cert = [0] * n
            cert[i] = 1
            raise PositivityError(
                f"generator {generators[i]} has zero free part (torsion element)", cert
            )
    # lambda = u - w with u, w >= 0; slack s_i >= 0: f_i.u - f_i.w - s_i = 1
    rows = [list(f) + [-x for x in f] + [-int(k == i) for k in range(n)] for i, f in enumerate(frees)]
    total = [sum(f[k] for f in frees) for k in range(d)]
    cost = total + [-x for x in total] + [0] * n
    sol = lp.solve(rows, [1] * n, cost)
    if sol is None:
        raise PositivityError("no strictly positive grading exists", _positivity_certificate(frees))
    lam = _clear_denominators([sol[k] - sol[d + k] for k in range(d)])
    assert all(sum(a * b for a, b in zip(lam, f)) >= 1 for f in frees)
    return lam


def _positivity_certificate(frees):
    # c >= 0, sum(c) = 1, sum(c_i f_i) = 0
    n, d = len(frees), len(frees[0])
    rows = [[f[k] for f in frees] for k in range(d)] + [[1] * n]
    sol = lp.nonnegative_solution(rows, [0] * d + [1])
    return None if sol is None else list(_clear_denominators(sol))


def validate(
    presentation: SemigroupPresentation,
    grading: Sequence[int] | None = None,
    memo_cap: int = DEFAULT_MEMO_CAP,
    enum_cap: int = DEFAULT_ENUM_CAP,
) -> "ValidatedSemigroup":
    """Check positivity and attach a strictly positive integer grading.

    An explicit ``grading`` is accepted if it is >= 1 on every generator.
    """
    ambient = presentation.ambient
    gens = _dedupe(presentation.generators)
    if grading is None:
        grading = find_grading(ambient, gens)
    else:
        grading = tuple(int(x) for x in grading)
        if len(grading) != ambient.free_rank:
            raise ValueError("grading length must equal the free rank")
        for g in gens:
            if sum(a * b for a, b in zip(grading, g)) < 1:
                raise PositivityError(f"grading {grading} is not positive on generator {g}")
    return ValidatedSemigroup(
        SemigroupPresentation(ambient, gens), grading, memo_cap=memo_cap, enum_cap=enum_cap
    )


class ValidatedSemigroup:
    """A presentation together with a positivity witness and a membership oracle."""

    def __init__(self, presentation, grading, memo_cap=DEFAULT_MEMO_CAP, enum_cap=DEFAULT_ENUM_CAP):
        self.presentation = presentation
        self.ambient = presentation.ambient
        self.generators = presentation.generators
        self.grading = tuple(grading)
        self.grading_values = tuple(self.degree(g) for g in self.generators)
        if min(self.grading_values) < 1:
            raise PositivityError("grading must be >= 1 on every generator")
        self.min_lambda = min(self.grading_values)
        self.memo_cap = memo_cap
        self.enum_cap = enum_cap
        self._memo = {self.ambient.zero: True}
        self._lock = threading.Lock()
        self._enum_bound = -1
        self._enum_set = frozenset()
        self._enum_sorted = ()

    def __repr__(self):
        return f"ValidatedSemigroup(generators={list(self.generators)}, grading={self.grading})"

    def degree(self, g: Element) -> int:
        return sum(a * b for a, b in zip(self.grading, g))

    def sort_key(self, g: Element):
        return (self.degree(g), g)

    @cached_property
    def dimension(self) -> int:
        frees = [self.ambient.free(g) for g in self.generators]
        return dense_rank(frees, 0)

    # -- membership ---------------------------------------------------------

    def _quick(self, g):
        r = self._memo.get(g)
        if r is not None:
            return r
        lam = self.degree(g)
        if lam < self.min_lambda:
            return g == self.ambient.zero
        if lam <= self._enum_bound:
            return g in self._enum_set
        return None

    def is_member(self, g: Element) -> bool:
        return self.has(self.ambient.element(g))

    def has(self, g: Element) -> bool:
        """Membership for an already-normalized element."""
        r = self._quick(g)
        if r is not None:
            return r
        return self._resolve(g)

    def _resolve(self, g):
        # Depth-first search over g - gen; lambda strictly drops along every edge.
        sub = self.ambient.sub
        gens = self.generators
        n = len(gens)
        new = {}
        stack = [[g, 0]]
        found = False
        while stack:
            frame = stack[-1]
            x = frame[0]
            if found:
                new[x] = True
                stack.pop()
                continue
            descended = False
            i = frame[1]
            while i < n:
                child = sub(x, gens[i])
                i += 1
                r = new.get(child)
                if r is None:
                    r = self._quick(child)
                if r is True:
                    found = True
                    break
                if r is None:
                    frame[1] = i
                    stack.append([child, 0])
                    descended = True
                    break
            if found:
                new[x] = True
                stack.pop()
            elif not descended:
                new[x] = False
                stack.pop()
        with self._lock:
            self._memo.update(new)
            if len(self._memo) > self.memo_cap:
                raise BudgetError(f"membership memo exceeded {self.memo_cap} entries")
        return new[g]

    def require_member(self, g: Element) -> Element:
        g = self.ambient.element(g)
        if not self.is_member(g):
            raise MembershipError(f"{g} is not in the semigroup")
        return g

    # -- enumeration --------------------------------------------------------

    def enumerate_up_to(self, N: int) -> list:
        """Members of lambda-degree <= N sorted by (degree, coordinates)."""
        if N < 0:
            raise ValueError("bound must be nonnegative")
        if N <= self._enum_bound:
            return [m for m in self._enum_sorted if self.degree(m) <= N]
        add = self.ambient.add
        members = {self.ambient.zero}
        frontier = [self.ambient.zero]
        while frontier:
            nxt = []
            for x in frontier:
                for gen in self.generators:
                    y = add(x, gen)
                    if y not in members and self.degree(y) <= N:
                        members.add(y)
                        nxt.append(y)
            if len(members) > self.enum_cap:
                raise BudgetError(f"more than {self.enum_cap} members of degree <= {N}")
            frontier = nxt
        ordered = tuple(sorted(members, key=self.sort_key))
        with self._lock:
            if N > self._enum_bound:
                self._enum_sorted = ordered
                self._enum_set = frozenset(members)
                self._enum_bound = N
        return list(ordered)

    # -- choice sets ----------------------------------------------------------

    def choice_set(self, elements: Iterable[Element]) -> "ChoiceSet":
        return ChoiceSet(self, elements)

    def cone_generates(self, E: "ChoiceSet") -> bool:
        return cone_generates(self, E)

    def semigroup_generates(self, E: "ChoiceSet") -> bool:
        return semigroup_generates(self, E)


class ChoiceSet:
    """A nonempty finite set E of nonzero members of S, kept in input order."""

    def __init__(self, semigroup: ValidatedSemigroup, elements: Iterable[Element]):
        amb = semigroup.ambient
        elems = tuple(amb.element(e) for e in elements)
        if not elems:
            raise ValueError("E must be nonempty")
        if len(set(elems)) != len(elems):
            raise ValueError("E must not contain repeated elements")
        for e in elems:
            if e == amb.zero:
                raise ValueError("E must not contain 0")
            if not semigroup.is_member(e):
                raise MembershipError(f"{e} is not in the semigroup")
        self.semigroup = semigroup
        self.elements = elems

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __repr__(self):
        return f"ChoiceSet({list(self.elements)})"

    @cached_property
    def subset_sums(self) -> list:
        """``subset_sums[mask]`` is e_J for the subset J encoded by ``mask``."""
        amb = self.semigroup.ambient
        sums = [amb.zero]
        for e in self.elements:
            sums += [amb.add(s, e) for s in sums]
        return sums

    @property
    def total(self) -> Element:
        return self.subset_sums[-1]

    @cached_property
    def generates_cone(self) -> bool:
        return cone_generates(self.semigroup, self)

    @cached_property
    def generates_semigroup(self) -> bool:
        return semigroup_generates(self.semigroup, self)

    def union(self, extra: Iterable[Element]) -> "ChoiceSet":
        extra = [self.semigroup.ambient.element(a) for a in extra]
        return ChoiceSet(self.semigroup, self.elements + tuple(a for a in extra if a not in self.elements))


def cone_generates(S: ValidatedSemigroup, E: ChoiceSet) -> bool:
    """True iff every generator lies in the rational cone spanned by E."""
    amb = S.ambient
    cols = [amb.free(e) for e in E]
    rows = [[c[k] for c in cols] for k in range(amb.free_rank)]
    return all(lp.nonnegative_solution(rows, amb.free(g)) is not None for g in S.generators)


def semigroup_generates(S: ValidatedSemigroup, E: ChoiceSet) -> bool:
    """True iff every generator of S is a sum of elements of E."""
    sub = ValidatedSemigroup(SemigroupPresentation(S.ambient, E.elements), S.grading)
    return all(sub.is_member(g) for g in S.generators)


def is_member(S: ValidatedSemigroup, g) -> bool:
    return S.is_member(g)


def enumerate_up_to(S: ValidatedSemigroup, N: int) -> list:
    return S.enumerate_up_to(N)


def realize_complex(T):
    """Semigroup, element m and choice E with T_m homologous to the complex T.

    Generators in Z^{n+1}: one unit vector per vertex (last coordinate 0)
    and one 0/1 vector per facet with last coordinate 1; m = (1, ..., 1)
    and E is the full generator list.
    """
    n = len(T.ground_set)
    if n == 0 or T.support_mask != (1 << n) - 1:
        raise InvalidComplexError("every vertex of the ground set must be a face")
    if T.is_full_simplex():
        raise InvalidComplexError("the full simplex cannot be realized")
    ambient = AmbientGroup(n + 1)
    gens = [tuple(1 if i == j else 0 for j in range(n)) + (0,) for i in range(n)]
    for facet in T.facets():
        gens.append(tuple(1 if facet >> j & 1 else 0 for j in range(n)) + (1,))
    S = validate(SemigroupPresentation(ambient, tuple(gens)))
    m = (1,) * (n + 1)
    return S, m, S.choice_set(S.generators)
