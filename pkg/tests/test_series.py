import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semipoincare.errors import ExpansionError
from semipoincare.semigroup import AmbientGroup, SemigroupPresentation, validate
from semipoincare.series import (
    BivariatePoly,
    Poly,
    RationalExpr,
    TruncatedSeries,
    expand,
    indicator,
    product_one_minus,
)

from conftest import numerical

Z = AmbientGroup(1)


def P(*pairs, group=Z):
    return Poly.from_pairs(group, [((e,) if isinstance(e, int) else e, c) for e, c in pairs])


def test_poly_arithmetic_and_cancellation():
    a = P((0, 1), (2, -1))
    b = P((0, 1), (2, 1))
    assert a * b == P((0, 1), (4, -1))
    assert a + b == P((0, 2))
    assert (a - a).terms == {}
    assert 3 * a == P((0, 3), (2, -3))


def test_bar_and_shift():
    p = P((0, 1), (6, -1))
    assert p.bar() == P((0, 1), (-6, -1))
    assert p.bar().shift((6,)) == P((6, 1), (0, -1))


def test_torsion_exponents_reduce():
    G = AmbientGroup(1, (2,))
    a = Poly.monomial(G, (1, 1))
    assert (a * a).terms == {(2, 0): 1}


def test_product_one_minus():
    assert product_one_minus(Z, [(2,), (3,)]) == P((0, 1), (2, -1), (3, -1), (5, 1))


def test_json_round_trip():
    p = P((0, 1), (8, -1), (13, 1))
    assert Poly.from_json(Z, p.to_json()) == p


def test_expand_geometric():
    S = numerical(1)
    s = expand(RationalExpr(Poly.one(Z), [(1,)]), S, 5)
    assert s.terms == {(k,): 1 for k in range(6)}
    assert s.bound == 5


def test_expand_two_three():
    # (1 - t^6) / ((1 - t^2)(1 - t^3)) is the indicator of <2,3>
    S = numerical(2, 3)
    s = expand(RationalExpr(P((0, 1), (6, -1)), [(2,), (3,)]), S, 30)
    assert s == indicator(S.enumerate_up_to(30), S, 30)


def test_expand_rejects_degree_zero():
    S = validate(SemigroupPresentation(AmbientGroup(2), ((1, 0), (0, 1))), grading=(1, 1))
    with pytest.raises(ExpansionError):
        expand(RationalExpr(Poly.one(S.ambient), [(1, -1)]), S, 4)


def test_truncated_product_bound():
    S = numerical(1)
    a = TruncatedSeries(S, {(0,): 1, (1,): 1}, 3)
    b = TruncatedSeries(S, {(2,): 1}, 5)
    c = a * b
    # a is only known to 3 and b starts at 2; b is known to 5 and a starts at 0
    assert c.bound == min(3 + 2, 5 + 0)
    assert c.terms == {(2,): 1, (3,): 1}


def test_series_times_poly_bound():
    S = numerical(1)
    a = TruncatedSeries(S, {(0,): 1}, 4)
    c = a * P((1, 1))
    assert c.bound == 5


def test_first_mismatch_respects_bounds():
    S = numerical(1)
    a = TruncatedSeries(S, {(0,): 1, (5,): 1}, 6)
    b = TruncatedSeries(S, {(0,): 1}, 4)
    assert a.first_mismatch(b) is None
    assert a.first_mismatch(TruncatedSeries(S, {(0,): 1}, 6)) == (5,)
    with pytest.raises(ValueError):
        b.coeff((5,))


def test_bivariate_evaluation():
    B = BivariatePoly(Z, {(0, (0,)): 1, (0, (8,)): -1, (1, (13,)): -1})
    assert B.evaluate_v(-1) == P((0, 1), (8, -1), (13, 1))
    assert B.evaluate_v(1) == P((0, 1), (8, -1), (13, -1))


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.integers(1, 5), min_size=1, max_size=3),
    st.dictionaries(st.integers(0, 10), st.integers(-3, 3), max_size=5),
    st.integers(0, 25),
)
def test_expand_inverts_multiplication(exps, coeffs, N):
    S = numerical(1)
    f = Poly.from_pairs(Z, [((e,), c) for e, c in coeffs.items()])
    q = product_one_minus(Z, [(e,) for e in exps])
    s = expand(RationalExpr(f * q, [(e,) for e in exps]), S, N)
    assert s.agrees(f.truncate(S.degree, N))
    # and multiplying back by q recovers f * q up to the propagated bound
    assert (s * q).agrees(f * q)
