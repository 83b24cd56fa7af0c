"""Colored graphs G_B over a color set A, handled through their relations.

Graphs are never materialized: for each m we only need the relations
I subset A with m - a_I in B (dimension #I - 1), and for the graph on D-bar
the pairs (I, J) with m - a_I in D^J (dimension #I + #J - 2).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .errors import ConsistencyError, SaturationWarning
from .keysets import KeySets, compute_key_sets, mask_indices, tm_table
from .linalg import check_characteristic, rank
from .parallel import pmap
from .poincare import oracle_series
from .series import Poly, RationalExpr, TruncatedSeries, expand
from .simplicial import bits


@dataclass(frozen=True)
class BoundedSet:
    """A subset B of S known exactly for lambda-degree <= bound."""

    name: str
    members: frozenset
    bound: int

    def __contains__(self, m):
        return m in self.members

    def __len__(self):
        return len(self.members)


def key_set(ks: KeySets, which) -> BoundedSet:
    """``which`` is "Q" or a subset J of E (mask or index iterable)."""
    if which == "Q":
        return BoundedSet("Q", frozenset(ks.Q), ks.bound)
    members = ks.dj(which)
    mask = which if isinstance(which, int) else sum(1 << i for i in which)
    return BoundedSet("D^" + ",".join(map(str, mask_indices(mask))), frozenset(members), ks.bound)


class ColorSet:
    """Colors A: nonzero members of S disjoint from E."""

    def __init__(self, S, E, elements):
        amb = S.ambient
        elems = tuple(amb.element(a) for a in elements)
        if len(set(elems)) != len(elems):
            raise ValueError("colors must be distinct")
        for a in elems:
            if a == amb.zero:
                raise ValueError("0 cannot be a color")
            if E is not None and a in E.elements:
                raise ValueError(f"color {a} also lies in E")
            S.require_member(a)
        self.semigroup = S
        self.elements = elems
        sums = [amb.zero]
        for a in elems:
            sums += [amb.add(s, a) for s in sums]
        self.subset_sums = sums

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def _check_bound(S, B: BoundedSet, m):
    if S.degree(m) > B.bound:
        warnings.warn(
            f"lambda({m}) = {S.degree(m)} exceeds the bound {B.bound} of {B.name}",
            SaturationWarning,
            stacklevel=3,
        )


def relations(S, B: BoundedSet, m, A: ColorSet) -> list:
    """Masks I over A with m - a_I in B."""
    _check_bound(S, B, m)
    sub = S.ambient.sub
    return [I for I, s in enumerate(A.subset_sums) if sub(m, s) in B]


def chi_colored(S, B: BoundedSet, m, A: ColorSet) -> int:
    """chi(B, m): sum over relations I of (-1)^(#I - 1)."""
    return sum(1 if I.bit_count() % 2 else -1 for I in relations(S, B, m, A))


def colored_homology(S, B: BoundedSet, m, A: ColorSet, characteristic: int = 0) -> tuple:
    """Homology ranks h_l(B, m) for l = -1 .. #A - 1 (index l + 1).

    The chain complex has the relations as basis and the boundary of the
    full simplex on A followed by projection onto relations.
    """
    check_characteristic(characteristic)
    rels = relations(S, B, m, A)
    k = len(A)
    by_size = [[] for _ in range(k + 1)]
    for I in rels:
        by_size[I.bit_count()].append(I)
    index = [{I: i for i, I in enumerate(level)} for level in by_size]
    ranks = [0] * (k + 2)
    for size in range(1, k + 1):
        lower = index[size - 1]
        rows = []
        for I in by_size[size]:
            row = {}
            sign = 1
            for i in bits(I):
                face = I ^ (1 << i)
                if face in lower:
                    row[lower[face]] = sign
                sign = -sign
            rows.append(row)
        ranks[size] = rank(rows, characteristic)
    return tuple(len(by_size[s]) - ranks[s] - ranks[s + 1] for s in range(k + 1))


def chi_dbar(S, ks: KeySets, m, A: ColorSet) -> int:
    """chi(D-bar, m): sum over pairs (I, J), m - a_I in D^J, of (-1)^(#I + #J)."""
    if S.degree(m) > ks.bound:
        warnings.warn(f"lambda({m}) exceeds the key-set bound {ks.bound}", SaturationWarning, stacklevel=2)
    sub = S.ambient.sub
    sets = {J: frozenset(ms) for J, ms in ks.DJ.items() if ms}
    total = 0
    for I, s in enumerate(A.subset_sums):
        x = sub(m, s)
        for J, members in sets.items():
            if x in members:
                total += -1 if (I.bit_count() + J.bit_count()) % 2 else 1
    return total


def _graph_numerator(S, chis, members) -> Poly:
    return Poly(S.ambient, {m: -c for m, c in zip(members, chis)})


def graph_series(S, B: BoundedSet, A: ColorSet, E, N: int, jobs: int = 1) -> TruncatedSeries:
    """P_{G_B} = -sum chi(B, m) t^m / (prod_E (1 - t^e) prod_A (1 - t^a)), up to degree N."""
    members = S.enumerate_up_to(N)
    chis = pmap(lambda m: chi_colored(S, B, m, A), members, jobs)
    num = _graph_numerator(S, chis, members)
    return expand(RationalExpr(num, tuple(E.elements) + A.elements), S, N)


def indicator_over_E(S, B: BoundedSet, E, N: int) -> TruncatedSeries:
    """N_B / prod_E (1 - t^e), up to degree N."""
    num = Poly(S.ambient, {m: 1 for m in B.members if S.degree(m) <= N})
    return expand(RationalExpr(num, E.elements), S, N)


def check_hereditary(S, B: BoundedSet):
    """First (b, n, n') violating: b, b+n+n' in B but b+n or b+n' not in B; else None."""
    sub = S.ambient.sub
    add = S.ambient.add
    members = sorted(B.members, key=S.sort_key)
    for b in members:
        for c in members:
            diff = sub(c, b)
            dd = S.degree(diff)
            if dd <= 0 or not S.has(diff):
                continue
            for n in S.enumerate_up_to(dd):
                rest = sub(diff, n)
                if S.has(rest):
                    if add(b, n) not in B.members:
                        return (b, n, rest)
    return None


@dataclass
class DbarReport:
    E: object
    A: ColorSet
    bound: int
    witnesses: list  # (m, chi(T'_m), chi(Q, m), chi(Dbar, m))
    chi_identity: bool
    series_identity: bool
    dbar_identity: bool
    graph_identities: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "E": [list(e) for e in self.E],
            "colors": [list(a) for a in self.A],
            "bound": self.bound,
            "chi_identity": self.chi_identity,
            "series_identity": self.series_identity,
            "dbar_identity": self.dbar_identity,
            "graph_identities": self.graph_identities,
            "witnesses": [
                {"m": list(m), "chi_T_prime": a, "chi_Q": b, "chi_Dbar": c}
                for m, a, b, c in self.witnesses
                if a or b or c
            ],
        }


def dbar_decomposition(S, E, A, N: int, jobs: int = 1, strict: bool = True) -> DbarReport:
    """Check chi(T'_m) = chi(Q, m) + chi(Dbar, m), P = P_GQ + P_GDbar and the D^J expansion."""
    if not isinstance(A, ColorSet):
        A = ColorSet(S, E, A)
    Eprime = E.union(A.elements)
    ks = compute_key_sets(S, E, N, jobs)
    Qset = key_set(ks, "Q")
    table = tm_table(S, Eprime, N, jobs)

    def row(entry):
        m, faces = entry
        chi_t = sum(-1 if f.bit_count() % 2 == 0 else 1 for f in faces)
        return m, chi_t, chi_colored(S, Qset, m, A), chi_dbar(S, ks, m, A)

    witnesses = pmap(row, table, jobs)
    bad = next((w[0] for w in witnesses if w[1] != w[2] + w[3]), None)
    if strict and bad is not None:
        raise ConsistencyError(f"chi(T'_m) != chi(Q, m) + chi(Dbar, m) at m = {bad}", bad)
    chi_ok = bad is None

    members = [w[0] for w in witnesses]
    denoms = tuple(E.elements) + A.elements
    PQ = expand(RationalExpr(_graph_numerator(S, [w[2] for w in witnesses], members), denoms), S, N)
    PD = expand(RationalExpr(_graph_numerator(S, [w[3] for w in witnesses], members), denoms), S, N)
    bad = oracle_series(S, N).first_mismatch(PQ + PD)
    if strict and bad is not None:
        raise ConsistencyError(f"P != P_GQ + P_GDbar at {bad}", bad)
    series_ok = bad is None

    combo = TruncatedSeries(S, {}, N)
    graph_ok = {}
    for J in ks.nonempty_subsets():
        B = key_set(ks, J)
        GJ = graph_series(S, B, A, E, N, jobs)
        graph_ok[B.name] = GJ.agrees(indicator_over_E(S, B, E, N))
        combo = combo + (-GJ if J.bit_count() % 2 == 0 else GJ)
    graph_ok["Q"] = PQ.agrees(indicator_over_E(S, Qset, E, N))
    bad = PD.first_mismatch(combo)
    if strict and bad is not None:
        raise ConsistencyError(f"P_GDbar != sum (-1)^(#J-1) P_GDJ at {bad}", bad)
    if strict and not all(graph_ok.values()):
        raise ConsistencyError(f"graph series differs from N_B / q for {[k for k, v in graph_ok.items() if not v]}")
    return DbarReport(E, A, N, witnesses, chi_ok, series_ok, bad is None, graph_ok)
