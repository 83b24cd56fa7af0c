"""Graded Betti numbers, depth, the combinatorial bound r', Gorenstein / CI detection.

Indexing: beta_{j,m} = h_{j-1}(T_m) (reduced homology), so beta_0 lives on the
Apery set and the projective dimension pd is the largest j with beta_j != 0.
Depth is #E - pd.  The chain-position index used for the syzygy series is
j - 1; both indexings are written into every report.
"""

from __future__ import annotations

import warnings
from math import gcd
from collections import defaultdict
from dataclasses import dataclass, field

from .errors import ConsistencyError, HypothesisError, SaturationWarning
from .keysets import key_sets_from_table, mask_indices, tm_table
from .linalg import check_characteristic
from .parallel import pmap
from .poincare import numerator_from_table
from .series import BivariatePoly, Poly, product_one_minus
from .simplicial import Complex, bits

INDEXING = {
    "betti": "beta[j][m] = reduced h_{j-1}(T_m); beta_0 sits on the Apery set; pd = max j with beta_j != 0",
    "depth": "r = #E - pd",
    "syzygy_series": "v exponent is j - 1 (chain position); P^h = 1 - sum beta[j][m] v^(j-1) t^m over j >= 1",
}

# the relative-dual cross-check touches 2^#E subsets for every m
DUAL_CHECK_MAX_E = 12


def _table(S, E, N, jobs, table):
    return tm_table(S, E, N, jobs) if table is None else table


def _complex(E, faces) -> Complex:
    return Complex(range(len(E)), faces, check=False)


@dataclass
class BettiTable:
    characteristic: int
    bound: int
    n_generators: int
    entries: dict  # (j, m) -> beta, nonzero only
    saturated: bool
    sort_key: object = field(repr=False, default=None)

    @property
    def totals(self) -> list:
        out = [0] * (self.pd + 1)
        for (j, _), b in self.entries.items():
            out[j] += b
        return out

    @property
    def pd(self) -> int:
        return max((j for j, _ in self.entries), default=0)

    def beta(self, j: int, m) -> int:
        return self.entries.get((j, tuple(m)), 0)

    def degrees(self, j: int) -> list:
        """Exponents carrying beta_j, with multiplicity, in canonical order."""
        out = []
        for (jj, m), b in self.entries.items():
            if jj == j:
                out += [m] * b
        return sorted(out, key=self.sort_key)

    def rows(self) -> list:
        key = self.sort_key or (lambda m: m)
        return sorted(((j, m, b) for (j, m), b in self.entries.items()), key=lambda r: (r[0], key(r[1])))

    def to_json(self) -> dict:
        return {
            "characteristic": self.characteristic,
            "bound": self.bound,
            "saturated": self.saturated,
            "pd": self.pd,
            "totals": self.totals,
            "entries": [{"j": j, "exp": list(m), "value": b} for j, m, b in self.rows()],
            "indexing": INDEXING,
        }

    def to_csv(self) -> str:
        lines = ["j,exp,value"]
        lines += [f"{j},{' '.join(map(str, m))},{b}" for j, m, b in self.rows()]
        return "\n".join(lines) + "\n"


def _require_generating(E):
    if not E.generates_semigroup:
        raise HypothesisError("E does not generate S as a semigroup; Betti numbers need a generating E")


def betti_table(S, E, characteristic: int = 0, N: int | None = None, jobs: int = 1, table=None) -> BettiTable:
    """beta_{j,m} over the field of the given characteristic for all m with lambda(m) <= N."""
    check_characteristic(characteristic)
    _require_generating(E)
    if N is None:
        N = 5 * max(S.degree(e) for e in E) * len(E)
    table = _table(S, E, N, jobs, table)
    profiles = pmap(lambda row: _complex(E, row[1]).reduced_homology(characteristic), table, jobs)
    entries = {}
    for (m, _), prof in zip(table, profiles):
        for j, b in enumerate(prof.dims):
            if b:
                entries[(j, m)] = b
    ks = key_sets_from_table(S, E, N, table)
    saturated = ks.saturation.stable
    if not saturated:
        warnings.warn(f"Betti table at bound {N} may be incomplete (saturation unstable)", SaturationWarning, stacklevel=2)
    return BettiTable(characteristic, N, len(E), entries, saturated, S.sort_key)


@dataclass
class DepthReport:
    characteristic: int
    bound: int
    pd: int
    r: int
    r_homology_witness: dict
    r_dual_witness: dict | None
    r_prime: int
    largest_nonempty_D: int
    sphere_witness: tuple | None
    d: int
    cohen_macaulay: bool
    D_finite: bool
    within_bounds: bool
    saturated: bool
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        sw = None
        if self.sphere_witness is not None:
            m, J = self.sphere_witness
            sw = {"m": list(m), "J": J}
        return {
            "characteristic": self.characteristic,
            "bound": self.bound,
            "pd": self.pd,
            "r": self.r,
            "r_homology_witness": self.r_homology_witness,
            "r_dual_witness": self.r_dual_witness,
            "r_prime": self.r_prime,
            "largest_nonempty_D": self.largest_nonempty_D,
            "sphere_witness": sw,
            "d": self.d,
            "cohen_macaulay": self.cohen_macaulay,
            "D_finite": self.D_finite,
            "within_bounds": self.within_bounds,
            "saturated": self.saturated,
            "notes": self.notes,
            "indexing": INDEXING,
        }


def r_prime(n_E: int, ks) -> tuple:
    """(r', k) where k is the largest #J with D^J nonempty (0 if D is empty, then r' = #E)."""
    k = max((J.bit_count() for J in ks.nonempty_subsets()), default=0)
    return (n_E if k == 0 else n_E - k + 1), k


def sphere_witness(E, table, ks, k: int):
    """Some (m, J) with J a (#J - 2)-sphere of T_m and #J = k, searching D^J for #J = k."""
    faces_of = dict(table)
    for J in ks.nonempty_subsets():
        if J.bit_count() != k:
            continue
        for m in ks.DJ[J]:
            faces = faces_of[m]
            if all(J ^ (1 << i) in faces for i in bits(J)):
                return m, mask_indices(J)
    return None


def depth_report(
    S, E, characteristic: int = 0, N: int | None = None, jobs: int = 1, table=None, dual_check: bool | None = None
) -> DepthReport:
    check_characteristic(characteristic)
    _require_generating(E)
    if N is None:
        N = 5 * max(S.degree(e) for e in E) * len(E)
    table = _table(S, E, N, jobs, table)
    bt = betti_table(S, E, characteristic, N, jobs, table)
    nE = len(E)
    pd = bt.pd
    r = nE - pd
    notes = []

    # homology reading: h_{#E-r}(T_m) = 0 everywhere, h_{#E-r-1} != 0 somewhere
    top = [(j, m) for (j, m) in bt.entries if j == pd]
    wm = min((m for _, m in top), key=S.sort_key)
    hom_witness = {"index": nE - r - 1, "m": list(wm), "vanishing_index": nE - r}
    if any(j > pd for j, _ in bt.entries):
        raise ConsistencyError("homology above pd")

    dual_witness = None
    if dual_check is None:
        dual_check = nE <= DUAL_CHECK_MAX_E
    if dual_check:

        def dual_profile(row):
            return _complex(E, row[1]).relative_alexander_dual().reduced_homology(characteristic)

        profs = pmap(dual_profile, table, jobs)
        wit = None
        for (m, _), prof in zip(table, profs):
            if prof.h(r - 3):
                raise ConsistencyError(f"relative dual of T_{m} has h_{r - 3} != 0", m)
            if wit is None and prof.h(r - 2):
                wit = m
        if wit is None:
            raise ConsistencyError(f"no m with h_{r - 2} of the relative dual nonzero")
        dual_witness = {"index": r - 2, "m": list(wit), "vanishing_index": r - 3}
    else:
        notes.append(f"relative-dual cross-check skipped (#E = {nE} > {DUAL_CHECK_MAX_E})")

    ks = key_sets_from_table(S, E, N, table)
    rp, k = r_prime(nE, ks)
    sw = sphere_witness(E, table, ks, k) if k else None
    if k == 0:
        # D empty: the (-1)-sphere is the empty set in T_0
        sw = (S.ambient.zero, [])
        notes.append("D is empty up to the bound; r' = #E by convention")
    if r < rp:
        raise ConsistencyError(f"depth {r} below the combinatorial bound r' = {rp}")
    if sw is not None and r != rp:
        raise ConsistencyError(f"sphere witness {sw} present but r = {r} != r' = {rp}")
    d = S.dimension
    D_finite = ks.saturation.stable
    if D_finite and r != rp:
        warnings.warn(
            f"D looks finite at bound {N} but r = {r} != r' = {rp}; finiteness is only heuristic",
            SaturationWarning,
            stacklevel=2,
        )
    within = 1 <= r <= d
    if not within:
        notes.append(f"r = {r} outside [1, d = {d}]: the bound {N} is too small to see the full resolution")
    return DepthReport(
        characteristic, N, pd, r, hom_witness, dual_witness, rp, k, sw, d, r == d, D_finite, within,
        bt.saturated, notes,
    )


def numerator_from_betti(S, bt: BettiTable) -> Poly:
    """p = sum_j (-1)^j sum_m beta_{j,m} t^m."""
    acc = defaultdict(int)
    for (j, m), b in bt.entries.items():
        acc[m] += b if j % 2 == 0 else -b
    return Poly(S.ambient, acc)


def cyclotomic_factors(S, p: Poly):
    """Exponents c with p = prod (1 - t^c), found by peeling the lowest term; None if p has no such form."""
    deg = S.degree
    zero = S.ambient.zero
    if p.coeff(zero) != 1:
        return None
    out = []
    rest = p
    while rest != Poly.one(S.ambient):
        others = [m for m in rest.terms if m != zero]
        c = min(others, key=S.sort_key)
        if rest.coeff(c) != -1 or deg(c) <= 0:
            return None
        # divide by (1 - t^c): multiply by 1 + t^c + t^2c + ... up to the top degree
        top = rest.max_degree(deg)
        geo = {}
        x, k = zero, 0
        while k * deg(c) <= top:
            geo[x] = 1
            x = S.ambient.add(x, c)
            k += 1
        q = (rest * Poly(S.ambient, geo)).truncate(deg, top - deg(c))
        if q * Poly.one_minus(S.ambient, c) != rest:
            return None
        out.append(c)
        rest = q
    return out


def brute_force_conductor(S):
    """Least c with c + N inside S, for a numerical semigroup (free rank 1, no torsion, gcd 1)."""
    amb = S.ambient
    if amb.free_rank != 1 or amb.torsion_orders:
        return None
    gens = [g[0] for g in S.generators]
    if any(x <= 0 for x in gens):
        return None
    gg = 0
    for x in gens:
        gg = gcd(gg, x)
    if gg != 1:
        return None
    # the largest gap is below (min gen - 1) * (max gen - 1) (Schur); run one min-gen past it
    a, b = min(gens), max(gens)
    limit = (a - 1) * (b - 1) + a
    gaps = [n for n in range(limit + 1) if not S.has((n,))]
    return (max(gaps) + 1) if gaps else 0


@dataclass
class StructureReport:
    characteristic: int
    bound: int
    numerator: Poly
    numerator_matches_betti: bool
    gorenstein: bool
    g: tuple | None
    symmetric: bool | None
    functional_equation_holds: bool
    functional_equation_g: tuple | None
    ci: bool
    C: list | None
    ci_product_matches: bool | None
    f: tuple | None
    conductor: int | None
    conductor_brute_force: int | None
    cyclotomic_numerator_but_not_ci: bool
    saturated: bool
    depth: DepthReport = field(repr=False, default=None)

    def to_json(self) -> dict:
        def opt(x):
            return list(x) if x is not None else None

        return {
            "characteristic": self.characteristic,
            "bound": self.bound,
            "saturated": self.saturated,
            "numerator": self.numerator.to_json(),
            "numerator_matches_betti": self.numerator_matches_betti,
            "gorenstein": self.gorenstein,
            "g": opt(self.g),
            "symmetric": self.symmetric,
            "functional_equation_holds": self.functional_equation_holds,
            "functional_equation_g": opt(self.functional_equation_g),
            "ci": self.ci,
            "C": [list(c) for c in self.C] if self.C is not None else None,
            "ci_product_matches": self.ci_product_matches,
            "f": opt(self.f),
            "conductor": self.conductor,
            "conductor_brute_force": self.conductor_brute_force,
            "cyclotomic_numerator_but_not_ci": self.cyclotomic_numerator_but_not_ci,
            "r": self.depth.r if self.depth else None,
            "d": self.depth.d if self.depth else None,
            "indexing": INDEXING,
        }


def _functional_equation(S, p: Poly, g, sign: int) -> bool:
    return p + p.bar().shift(g) * sign == Poly(S.ambient, {})


def structure_report(S, E, characteristic: int = 0, N: int | None = None, jobs: int = 1, table=None) -> StructureReport:
    check_characteristic(characteristic)
    _require_generating(E)
    if N is None:
        N = 5 * max(S.degree(e) for e in E) * len(E)
    table = _table(S, E, N, jobs, table)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SaturationWarning)
        bt = betti_table(S, E, characteristic, N, jobs, table)
        dr = depth_report(S, E, characteristic, N, jobs, table)
    if not bt.saturated:
        warnings.warn(f"structure report at bound {N} rests on unsaturated data", SaturationWarning, stacklevel=2)
    p = numerator_from_table(S, E, table, "euler", jobs)
    pb = numerator_from_betti(S, bt)
    matches = p == pb
    if not matches:
        raise ConsistencyError("numerator from Betti numbers differs from the Euler-characteristic numerator")

    nE, d, pd = len(E), dr.d, bt.pd
    sign = (-1) ** (nE + d - 1)
    amb = S.ambient
    totals = bt.totals
    gorenstein = totals[pd] == 1 and dr.r == d
    g = symmetric = None
    if gorenstein:
        g = bt.degrees(pd)[0]
        symmetric = all(bt.beta(pd - j, amb.sub(g, m)) == b for (j, m), b in bt.entries.items())

    # search every exponent of p as a candidate g for p + sign t^g p(1/t) = 0
    fe_g = None
    for cand in sorted(p.terms, key=S.sort_key):
        if _functional_equation(S, p, cand, sign):
            fe_g = cand
            break
    fe_holds = fe_g is not None
    if gorenstein and not (fe_holds and _functional_equation(S, p, g, sign)):
        raise ConsistencyError(f"Gorenstein with g = {g} but the functional equation fails")

    ci = pd >= 1 and totals[1] == nE - d
    C = ci_ok = None
    if ci:
        C = bt.degrees(1)
        ci_ok = p == product_one_minus(amb, C)
        if not ci_ok:
            raise ConsistencyError(f"complete intersection but p != prod(1 - t^c) over C = {C}")
        if not gorenstein:
            raise ConsistencyError("complete intersection that is not Gorenstein")
        if amb.sum(C) != g:
            raise ConsistencyError(f"sum of C = {amb.sum(C)} differs from g = {g}")
    facs = cyclotomic_factors(S, p)
    cyc_not_ci = facs is not None and pd >= 1 and totals[1] > nE - d

    f = conductor = brute = None
    if gorenstein and d == 1:
        f = amb.sub(g, E.total)
        brute = brute_force_conductor(S)
        # c = f + 1 only makes sense when S spans the ambient Z (gcd of generators 1)
        if brute is not None:
            conductor = f[0] + 1
            if brute != conductor:
                raise ConsistencyError(f"conductor from g is {conductor}, brute force gives {brute}")
    return StructureReport(
        characteristic, N, p, matches, gorenstein, g, symmetric, fe_holds, fe_g, ci, C, ci_ok,
        f, conductor, brute, cyc_not_ci, bt.saturated, dr,
    )


def syzygy_series(S, E, characteristic: int = 0, N: int | None = None, jobs: int = 1, table=None) -> BivariatePoly:
    """P^h = 1 - sum_{j >= 1} beta_{j,m} v^(j-1) t^m."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SaturationWarning)
        bt = betti_table(S, E, characteristic, N, jobs, table)
    terms = {(0, S.ambient.zero): 1}
    for (j, m), b in bt.entries.items():
        if j >= 1:
            terms[(j - 1, m)] = terms.get((j - 1, m), 0) - b
    return BivariatePoly(S.ambient, terms)
