import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semipoincare.errors import HypothesisError, SaturationWarning
from semipoincare.keysets import compute_key_sets, tm_table
from semipoincare.poincare import numerator
from semipoincare.resolution import (
    betti_table,
    brute_force_conductor,
    cyclotomic_factors,
    depth_report,
    numerator_from_betti,
    r_prime,
    structure_report,
    syzygy_series,
)
from semipoincare.semigroup import AmbientGroup, SemigroupPresentation, realize_complex, validate
from semipoincare.series import BivariatePoly, Poly, product_one_minus
from semipoincare.simplicial import Complex, build_Tm

from conftest import RP2_FACETS, choice, numerical

Z = AmbientGroup(1)


def gens_choice(*gens):
    S = numerical(*gens)
    return S, choice(S, *gens)


def test_betti_two_three():
    S, E = gens_choice(2, 3)
    bt = betti_table(S, E, 0, 30)
    assert bt.totals == [1, 1] and bt.pd == 1
    assert bt.beta(0, (0,)) == 1 and bt.beta(1, (6,)) == 1


def test_betti_three_four_five():
    S, E = gens_choice(3, 4, 5)
    bt = betti_table(S, E, 0, 40)
    assert bt.totals == [1, 3, 2]
    assert [m[0] for m in bt.degrees(1)] == [8, 9, 10]
    assert [m[0] for m in bt.degrees(2)] == [13, 14]
    assert bt.to_csv().splitlines()[:2] == ["j,exp,value", "0,0,1"]


def test_betti_naturals():
    S, E = gens_choice(1)
    bt = betti_table(S, E, 0, 10)
    assert bt.totals == [1] and bt.pd == 0


def test_betti_needs_generating_set():
    S = numerical(3, 4, 5)
    with pytest.raises(HypothesisError):
        betti_table(S, choice(S, 3, 4), 0, 30)


def test_betti_warns_when_unsaturated():
    S, E = gens_choice(3, 4, 5)
    with pytest.warns(SaturationWarning):
        betti_table(S, E, 0, 12)


def test_depth_three_four_five():
    S, E = gens_choice(3, 4, 5)
    dr = depth_report(S, E, 0, 40)
    assert dr.r == 1 and dr.d == 1 and dr.cohen_macaulay
    assert dr.r_prime == 1
    assert dr.sphere_witness == ((13,), [0, 1, 2])
    assert dr.r_dual_witness["m"] == [13]
    assert dr.within_bounds and dr.D_finite


def test_depth_two_three():
    S, E = gens_choice(2, 3)
    dr = depth_report(S, E, 0, 30)
    assert dr.r == 1 == dr.r_prime
    assert dr.sphere_witness == ((6,), [0, 1])


def test_depth_naturals_convention():
    S, E = gens_choice(1)
    dr = depth_report(S, E, 0, 10)
    assert dr.r == 1 and dr.r_prime == 1 and dr.largest_nonempty_D == 0


def test_structure_two_three():
    S, E = gens_choice(2, 3)
    st_ = structure_report(S, E, 0, 30)
    assert st_.gorenstein and st_.g == (6,) and st_.symmetric
    assert st_.ci and st_.C == [(6,)]
    assert st_.f == (1,) and st_.conductor == 2 == st_.conductor_brute_force
    assert st_.functional_equation_holds


def test_structure_three_four_five():
    S, E = gens_choice(3, 4, 5)
    st_ = structure_report(S, E, 0, 40)
    assert not st_.gorenstein and not st_.ci
    assert st_.numerator_matches_betti
    assert not st_.functional_equation_holds


def test_structure_three_five():
    S, E = gens_choice(3, 5)
    st_ = structure_report(S, E, 0, 40)
    assert st_.ci and st_.C == [(15,)]
    assert st_.numerator == Poly.from_pairs(Z, [((0,), 1), ((15,), -1)])
    assert st_.conductor == 8


def test_structure_complete_intersection_three_generators():
    S, E = gens_choice(4, 5, 6)
    st_ = structure_report(S, E, 0, 60)
    assert st_.ci and st_.C == [(10,), (12,)] and st_.g == (22,)
    assert st_.conductor == 8 == st_.conductor_brute_force


def test_functional_equation_sign():
    # (1 - t^6) + t^6 (1 - t^-6) = 0 because #E + d - 1 = 2
    p = Poly.from_pairs(Z, [((0,), 1), ((6,), -1)])
    assert p + p.bar().shift((6,)) == Poly(Z, {})


def test_syzygy_series():
    S, E = gens_choice(2, 3)
    assert syzygy_series(S, E, 0, 30) == BivariatePoly(Z, {(0, (0,)): 1, (0, (6,)): -1})
    S, E = gens_choice(1)
    assert syzygy_series(S, E, 0, 10) == BivariatePoly(Z, {(0, (0,)): 1})
    S, E = gens_choice(3, 4, 5)
    ph = syzygy_series(S, E, 0, 40)
    assert ph.coeff(0, (8,)) == -1 and ph.coeff(1, (13,)) == -1
    # v = -1 gives the numerator p (not the series P)
    assert ph.evaluate_v(-1) == numerator(S, E, 40)


def test_cyclotomic_factors():
    S = numerical(1)
    p = product_one_minus(Z, [(4,), (6,)])
    assert sorted(cyclotomic_factors(S, p)) == [(4,), (6,)]
    assert cyclotomic_factors(S, Poly.from_pairs(Z, [((0,), 1), ((8,), -1), ((9,), -1)])) is None


def test_brute_force_conductor():
    assert brute_force_conductor(numerical(3, 5)) == 8
    assert brute_force_conductor(numerical(1)) == 0
    assert brute_force_conductor(numerical(4, 6)) is None


def test_projective_plane_realization_tm():
    T = Complex.from_facets(range(6), RP2_FACETS)
    S, m, E = realize_complex(T)
    Tm = build_Tm(S, E, m)
    assert Tm.f_vector()[:5] == [1, 16, 45, 40, 10]
    # beta_{3,m} = h_2(T_m) depends on the field
    assert Tm.reduced_homology(2).h(2) == 1
    assert Tm.reduced_homology(0).h(2) == 0
    assert Tm.reduced_homology(3).h(2) == 0


small_numerical = st.lists(st.integers(2, 8), min_size=1, max_size=4, unique=True)


@settings(max_examples=30, deadline=None)
@given(small_numerical)
def test_betti_identities_random(gens):
    S, E = gens_choice(*gens)
    N = 8 * max(gens) + 8
    table = tm_table(S, E, N)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SaturationWarning)
        b0 = betti_table(S, E, 0, N, table=table)
        b2 = betti_table(S, E, 2, N, table=table)
        b3 = betti_table(S, E, 3, N, table=table)
        p = numerator(S, E, N)
        for bt in (b0, b2, b3):
            assert numerator_from_betti(S, bt) == p
            assert bt.totals[0] == 1
        ks = compute_key_sets(S, E, N)
        reports = [depth_report(S, E, c, N, table=table) for c in (0, 2, 3)]
    # r' does not see the field, r always dominates it
    assert len({r_prime(len(E), ks)} | {(d.r_prime, d.largest_nonempty_D) for d in reports}) == 1
    for d in reports:
        assert d.r >= d.r_prime
        if d.sphere_witness is not None:
            assert d.r == d.r_prime


@settings(max_examples=20, deadline=None)
@given(small_numerical)
def test_gorenstein_symmetry_random(gens):
    S, E = gens_choice(*gens)
    N = 8 * max(gens) + 8
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SaturationWarning)
        rep = structure_report(S, E, 0, N)
    if rep.gorenstein:
        assert rep.symmetric and rep.functional_equation_holds
        assert rep.conductor == rep.conductor_brute_force
    if rep.ci:
        assert rep.gorenstein and rep.ci_product_matches
