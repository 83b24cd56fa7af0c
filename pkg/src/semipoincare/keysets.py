"""Apery set Q, the sets D^J, and the single-element Apery data Q_E, E^{J'}.

Subsets J of E are bitmasks over E's indices throughout.  Every set is
truncated at a lambda-degree bound N and carries a heuristic saturation
report: no new element in the top window (N - w, N], w = max lambda(e).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .parallel import pmap
from .simplicial import bits, submasks, tm_faces


def mask_indices(mask: int) -> list:
    return list(bits(mask))


def subset_key(mask: int):
    return (mask.bit_count(), tuple(bits(mask)))


@dataclass
class SaturationReport:
    window: int
    bound: int
    stable: bool
    last_found: dict
    note: str = "heuristic: no new elements in the top window; not a proof of finiteness"

    def to_json(self) -> dict:
        return {
            "window": self.window,
            "bound": self.bound,
            "stable": self.stable,
            "last_found": self.last_found,
            "note": self.note,
        }


def saturation_report(S, E, N: int, named_sets: dict) -> SaturationReport:
    w = max(S.degree(e) for e in E)
    last = {}
    for name, elems in named_sets.items():
        last[name] = max((S.degree(m) for m in elems), default=None)
    stable = all(d is None or d <= N - w for d in last.values())
    return SaturationReport(w, N, stable, last)


def support_mask(S, E, m) -> int:
    sub = S.ambient.sub
    mask = 0
    for i, e in enumerate(E):
        if S.has(sub(m, e)):
            mask |= 1 << i
    return mask


def supports(S, E, m) -> tuple:
    """supp(m) = {e in E : m - e in S}, in E's order."""
    m = S.require_member(m)
    return tuple(E[i] for i in bits(support_mask(S, E, m)))


@dataclass
class KeySets:
    E: object
    bound: int
    Q: list
    DJ: dict  # mask -> sorted members
    saturation: SaturationReport
    supp: dict = field(default_factory=dict, repr=False)

    @property
    def D(self) -> list:
        key = self.E.semigroup.sort_key
        return sorted({m for ms in self.DJ.values() for m in ms}, key=key)

    def dj(self, J) -> list:
        """D^J for J given as a mask or an iterable of E indices."""
        if not isinstance(J, int):
            mask = 0
            for i in J:
                mask |= 1 << i
            J = mask
        return self.DJ.get(J, [])

    def nonempty_subsets(self) -> list:
        return sorted((J for J, ms in self.DJ.items() if ms), key=subset_key)

    def to_json(self) -> dict:
        return {
            "E": [list(e) for e in self.E],
            "bound": self.bound,
            "Q": [list(m) for m in self.Q],
            "D": {
                ",".join(map(str, mask_indices(J))): [list(m) for m in self.DJ[J]]
                for J in self.nonempty_subsets()
            },
            "saturation": self.saturation.to_json(),
        }


def tm_table(S, E, N: int, jobs: int = 1) -> list:
    """(m, faces of T_m) for every member of degree <= N, in canonical order."""
    members = S.enumerate_up_to(N)
    faces = pmap(lambda m: frozenset(tm_faces(S, E, m)), members, jobs)
    return list(zip(members, faces))


def key_sets_from_table(S, E, N: int, table) -> KeySets:
    Q = []
    DJ = {}
    supp = {}
    for m, faces in table:
        s = 0
        for i in range(len(E)):
            if 1 << i in faces:
                s |= 1 << i
        supp[m] = s
        if s == 0:
            Q.append(m)
            continue
        for J in submasks(s):
            if J.bit_count() >= 2 and J not in faces:
                DJ.setdefault(J, []).append(m)
    named = {"Q": Q}
    for J, ms in DJ.items():
        named["D^" + ",".join(map(str, mask_indices(J)))] = ms
    return KeySets(E, N, Q, DJ, saturation_report(S, E, N, named), supp)


def compute_key_sets(S, E, N: int, jobs: int = 1) -> KeySets:
    if N < 0:
        raise ValueError("bound must be nonnegative")
    return key_sets_from_table(S, E, N, tm_table(S, E, N, jobs))


@dataclass
class AperySingle:
    e_E: tuple
    bound: int
    QE: list
    EJ: dict  # nonempty mask -> sorted members
    saturation: SaturationReport

    def to_json(self) -> dict:
        return {
            "e_E": list(self.e_E),
            "bound": self.bound,
            "Q_E": [list(m) for m in self.QE],
            "E^J": {
                ",".join(map(str, mask_indices(J))): [list(m) for m in ms]
                for J, ms in sorted(self.EJ.items(), key=lambda kv: subset_key(kv[0]))
            },
            "saturation": self.saturation.to_json(),
        }


def apery_single(S, E, N: int) -> AperySingle:
    """Apery set of the single element e_E and the sets E^{J'} for nonempty J'."""
    e_E = E.total
    if N < S.degree(e_E):
        raise ValueError(f"bound {N} is below lambda(e_E) = {S.degree(e_E)}")
    sub = S.ambient.sub
    members = S.enumerate_up_to(N)
    QE = [m for m in members if not S.has(sub(m, e_E))]
    in_QE = set(QE)
    sums = E.subset_sums
    EJ = {}
    for J in range(1, 1 << len(E)):
        EJ[J] = [m for m in members if m not in in_QE and sub(m, sums[J]) in in_QE]
    named = {"Q_E": QE}
    named.update({"E^" + ",".join(map(str, mask_indices(J))): ms for J, ms in EJ.items()})
    return AperySingle(e_E, N, QE, EJ, saturation_report(S, E, N, named))
