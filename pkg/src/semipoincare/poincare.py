"""Numerators of the Poincare series P = sum_{m in S} t^m over prod_{e in E}(1 - t^e).

Four independent routes give the numerator q * P:

* ``euler``: -sum chi(T_m) t^m;
* ``sets``: N_Q - sum_{#J >= 2} (-1)^{#J} N_{D^J};
* ``dual``: sum (-1)^{#supp(m)} chi(T_m^dual) t^m (chi := 1 when supp(m) is empty);
* ``relative_dual``: sum (-1)^{#E} chi(relative dual of T_m) t^m.

Each coefficient at m only depends on T_m, so a numerator truncated at N is
exact in every degree <= N.  The brute-force oracle is the indicator of
the enumerated members.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .errors import ConsistencyError
from .keysets import KeySets, apery_single, key_sets_from_table, subset_key, tm_table
from .parallel import pmap
from .series import Poly, RationalExpr, TruncatedSeries, expand, indicator, product_one_minus
from .simplicial import Complex

METHODS = ("euler", "sets", "dual", "relative_dual")


def oracle_series(S, N: int) -> TruncatedSeries:
    return indicator(S.enumerate_up_to(N), S, N)


def denominator(E) -> Poly:
    return product_one_minus(E.semigroup.ambient, E.elements)


def _euler_coeff(E, faces):
    return -sum(-1 if f.bit_count() % 2 == 0 else 1 for f in faces)


def _dual_coeff(E, faces):
    T = Complex(range(len(E)), faces, check=False)
    supp = T.support_mask
    if supp == 0:
        return 1  # chi(T^dual) := 1 for T = {emptyset}
    return (-1) ** supp.bit_count() * T.alexander_dual().euler_char()


def _relative_dual_coeff(E, faces):
    T = Complex(range(len(E)), faces, check=False)
    return (-1) ** len(E) * T.relative_alexander_dual().euler_char()


_COEFF = {"euler": _euler_coeff, "dual": _dual_coeff, "relative_dual": _relative_dual_coeff}


def sets_numerator(S, ks: KeySets) -> Poly:
    acc = defaultdict(int)
    for m in ks.Q:
        acc[m] += 1
    for J, ms in ks.DJ.items():
        sign = -1 if J.bit_count() % 2 == 0 else 1
        for m in ms:
            acc[m] += sign
    return Poly(S.ambient, acc)


def numerator_from_table(S, E, table, method: str, jobs: int = 1, keysets=None) -> Poly:
    if method == "sets":
        if keysets is None:
            N = max((S.degree(m) for m, _ in table), default=0)
            keysets = key_sets_from_table(S, E, N, table)
        return sets_numerator(S, keysets)
    try:
        coeff = _COEFF[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}") from None
    values = pmap(lambda row: coeff(E, row[1]), table, jobs)
    return Poly(S.ambient, {m: c for (m, _), c in zip(table, values)})


def numerator(S, E, N: int, method: str = "euler", jobs: int = 1) -> Poly:
    """The numerator q * P truncated at degree N, computed by ``method``."""
    table = tm_table(S, E, N, jobs)
    return numerator_from_table(S, E, table, method, jobs)


def special_case_numerator(S, ks: KeySets) -> Poly:
    """Closed forms for #E = 1, 2, 3 written directly in terms of Q and D^J."""
    n = len(ks.E)
    amb = S.ambient
    NQ = Poly(amb, {m: 1 for m in ks.Q})
    if n == 1:
        return NQ
    if n == 2:
        return NQ - Poly(amb, {m: 1 for m in ks.D})
    if n == 3:
        out = NQ + Poly(amb, {m: 1 for m in ks.dj(0b111)})
        for pair in (0b011, 0b101, 0b110):
            out = out - Poly(amb, {m: 1 for m in ks.dj(pair)})
        return out
    raise ValueError("closed special forms exist only for #E <= 3")


def second_choice(E):
    """A default second choice E' = E plus e_E (or a multiple not already in E)."""
    amb = E.semigroup.ambient
    extra = E.total
    k = 1
    while extra in E.elements:
        k += 1
        extra = amb.scale(E.total, k)
    return E.union([extra])


@dataclass
class PoincareReport:
    E: object
    bound: int
    numerators: dict
    denominator_exponents: list
    oracle: TruncatedSeries
    methods_agree: bool
    series_agrees: bool
    saturated: bool
    cone_generated: bool
    numerator_saturated: bool
    keysets: KeySets = field(repr=False)
    second_choice: list | None = None
    second_numerator: Poly | None = None
    cross_identity: bool | None = None
    cross_identity_exact: bool | None = None

    @property
    def numerator(self) -> Poly:
        return self.numerators["euler"]

    @property
    def polynomial(self) -> Poly | None:
        """The polynomial p when E generates the cone and the numerator looks saturated.

        D may be infinite while the numerator is finite (terms cancel), so
        only the numerator's own top window matters here.
        """
        return self.numerator if (self.cone_generated and self.numerator_saturated) else None

    def to_json(self) -> dict:
        S = self.E.semigroup
        key = S.sort_key
        out = {
            "E": [list(e) for e in self.E],
            "bound": self.bound,
            "numerator": self.numerator.to_json(key),
            "denominator_exponents": [list(e) for e in self.denominator_exponents],
            "methods": {k: v.to_json(key) for k, v in self.numerators.items()},
            "methods_agree": self.methods_agree,
            "series_agrees_with_oracle": self.series_agrees,
            "saturated": self.saturated,
            "numerator_saturated": self.numerator_saturated,
            "cone_generated": self.cone_generated,
            "polynomial": self.polynomial is not None,
        }
        if self.second_choice is not None:
            out["second_choice"] = [list(e) for e in self.second_choice]
            out["second_numerator"] = self.second_numerator.to_json(key)
            out["cross_identity"] = self.cross_identity
            out["cross_identity_exact"] = self.cross_identity_exact
        return out


def _first_poly_mismatch(S, a: Poly, b: Poly, N: int):
    deg = S.degree
    bad = [m for m in set(a.terms) | set(b.terms) if deg(m) <= N and a.coeff(m) != b.coeff(m)]
    return min(bad, key=S.sort_key) if bad else None


def _numerator_saturated(S, E, p: Poly, N: int) -> bool:
    w = max(S.degree(e) for e in E)
    top = p.max_degree(S.degree)
    return top is None or top <= N - w


def verify_rational_form(S, E, N: int, E2=None, jobs: int = 1, strict: bool = True) -> PoincareReport:
    """Compute all four numerators and check them against each other and the oracle.

    Raises ConsistencyError (when ``strict``) on the first disagreement.
    The cross identity p * q' = p' * q for a second choice E' is always
    checked up to degree N; ``cross_identity_exact`` additionally compares
    the full products when both numerators look saturated.
    """
    table = tm_table(S, E, N, jobs)
    ks = key_sets_from_table(S, E, N, table)
    nums = {m: numerator_from_table(S, E, table, m, jobs, keysets=ks) for m in METHODS}
    ref = nums["euler"]
    methods_agree = True
    for name, p in nums.items():
        bad = _first_poly_mismatch(S, ref, p, N)
        if bad is not None:
            methods_agree = False
            if strict:
                raise ConsistencyError(f"numerator methods euler and {name} differ at {bad}", bad)
    q = denominator(E)
    oracle = oracle_series(S, N)
    qP = oracle * q
    expanded = expand(RationalExpr(ref, E.elements), S, N)
    bad = qP.first_mismatch(ref) or expanded.first_mismatch(oracle)
    series_agrees = bad is None
    num_saturated = _numerator_saturated(S, E, ref, N)
    saturated = ks.saturation.stable and num_saturated
    if strict and not series_agrees:
        raise ConsistencyError(f"q * P and the numerator differ at {bad}", bad, saturated)
    report = PoincareReport(
        E=E,
        bound=N,
        numerators=nums,
        denominator_exponents=list(E.elements),
        oracle=oracle,
        methods_agree=methods_agree,
        series_agrees=series_agrees,
        saturated=saturated,
        cone_generated=E.generates_cone,
        numerator_saturated=num_saturated,
        keysets=ks,
    )
    E2 = second_choice(E) if E2 is None else E2
    p2 = numerator(S, E2, N, "euler", jobs)
    q2 = denominator(E2)
    left, right = ref * q2, p2 * q
    bad = _first_poly_mismatch(S, left, right, N)
    report.second_choice = list(E2.elements)
    report.second_numerator = p2
    report.cross_identity = bad is None
    if strict and bad is not None:
        raise ConsistencyError(f"p * q' and p' * q differ at {bad}", bad, saturated)
    if num_saturated and _numerator_saturated(S, E2, p2, N) and E.generates_cone:
        report.cross_identity_exact = left == right
    return report


@dataclass
class CorollaryResult:
    holds: bool
    first_mismatch: tuple | None
    bound: int
    apery: object = field(repr=False)

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "first_mismatch": list(self.first_mismatch) if self.first_mismatch else None,
            "bound": self.bound,
            "apery": self.apery.to_json(),
        }


def corollary_identity(S, E, N: int, strict: bool = True) -> CorollaryResult:
    """Check P = N_{Q_E} - (sum_{J' nonempty} (-1)^{#J'} N_{E^{J'}}) / prod(1 - t^e) up to N."""
    ap = apery_single(S, E, N)
    acc = defaultdict(int)
    for J, ms in ap.EJ.items():
        sign = -1 if J.bit_count() % 2 else 1
        for m in ms:
            acc[m] += sign
    tail = expand(RationalExpr(Poly(S.ambient, acc), E.elements), S, N)
    rhs = indicator(ap.QE, S, N) - tail
    bad = oracle_series(S, N).first_mismatch(rhs)
    if strict and bad is not None:
        raise ConsistencyError(f"corollary identity fails at {bad}", bad, ap.saturation.stable)
    return CorollaryResult(bad is None, bad, N, ap)
