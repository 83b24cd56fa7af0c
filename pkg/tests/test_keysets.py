import pytest
from hypothesis import given, settings

from semipoincare.colored import check_hereditary, key_set
from semipoincare.errors import MembershipError
from semipoincare.keysets import apery_single, compute_key_sets, supports
from semipoincare.semigroup import AmbientGroup, SemigroupPresentation, validate
from semipoincare.simplicial import build_Tm

from conftest import bound_for, choice, numerical, semigroup_with_choice


def ints(elems):
    return [m[0] for m in elems]


def test_supports():
    S = numerical(2, 3)
    E = choice(S, 2, 3)
    assert supports(S, E, (0,)) == ()
    assert supports(S, E, (6,)) == ((2,), (3,))
    S = numerical(3, 4, 5)
    assert supports(S, choice(S, 3, 4, 5), (8,)) == ((3,), (4,), (5,))
    with pytest.raises(MembershipError):
        supports(S, choice(S, 3, 4, 5), (2,))


def test_two_three():
    S = numerical(2, 3)
    ks = compute_key_sets(S, choice(S, 2, 3), 20)
    assert ints(ks.Q) == [0]
    assert ints(ks.dj([0, 1])) == [6]
    assert ks.saturation.stable


def test_three_four_five():
    S = numerical(3, 4, 5)
    ks = compute_key_sets(S, choice(S, 3, 4, 5), 30)
    assert ints(ks.Q) == [0]
    # 8 - 3 - 4 = 1 is a gap, so the pair sets are not empty
    assert ints(ks.dj([0, 1])) == [8, 9]
    assert ints(ks.dj([0, 2])) == [9, 10]
    assert ints(ks.dj([1, 2])) == [8, 10, 11]
    assert ints(ks.dj([0, 1, 2])) == [8, 9, 10, 11, 13, 14]
    assert ks.saturation.stable


def test_three_four_with_pair():
    S = numerical(3, 4, 5)
    ks = compute_key_sets(S, choice(S, 3, 4), 30)
    assert ints(ks.Q) == [0, 5]
    assert ints(ks.dj([0, 1])) == [8, 9]


def test_torsion_keysets():
    S = validate(SemigroupPresentation(AmbientGroup(1, (2,)), ((1, 0), (1, 1))))
    ks = compute_key_sets(S, S.choice_set(S.generators), 10)
    assert ks.Q == [(0, 0)]
    assert ks.D == [(2, 0)]


def test_unsaturated_flag():
    S = numerical(3, 4, 5)
    ks = compute_key_sets(S, choice(S, 3, 4, 5), 12)
    assert not ks.saturation.stable
    assert "heuristic" in ks.saturation.note


def test_apery_single():
    S = numerical(2, 3)
    assert ints(apery_single(S, choice(S, 2), 20).QE) == [0, 3]
    ap = apery_single(S, choice(S, 2, 3), 20)
    assert ints(ap.QE) == [0, 2, 3, 4, 6]
    assert ints(ap.EJ[0b01]) == [5, 8]
    assert ints(ap.EJ[0b10]) == [5, 7, 9]
    assert ints(ap.EJ[0b11]) == [5, 7, 8, 9, 11]
    with pytest.raises(ValueError):
        apery_single(S, choice(S, 2, 3), 4)


def test_json_keys():
    S = numerical(3, 4, 5)
    js = compute_key_sets(S, choice(S, 3, 4), 30).to_json()
    assert js["Q"] == [[0], [5]]
    assert js["D"] == {"0,1": [[8], [9]]}


@settings(max_examples=40, deadline=None)
@given(semigroup_with_choice())
def test_definitional_invariants(SE):
    S, E = SE
    N = bound_for(S, E)
    ks = compute_key_sets(S, E, N)
    Q = set(ks.Q)
    assert not Q & set(ks.D)
    for m in S.enumerate_up_to(N):
        T = build_Tm(S, E, m)
        assert (m in Q) == (T.faces == {0}) == (not supports(S, E, m))
    for J, ms in ks.DJ.items():
        assert J.bit_count() >= 2
        for m in ms:
            T = build_Tm(S, E, m)
            assert J not in T.faces
            assert all(1 << i in T.faces for i in range(len(E)) if J >> i & 1)
            assert S.degree(m) <= N


@settings(max_examples=25, deadline=None)
@given(semigroup_with_choice(max_e=3))
def test_key_sets_hereditary(SE):
    S, E = SE
    ks = compute_key_sets(S, E, min(bound_for(S, E), 16))
    assert check_hereditary(S, key_set(ks, "Q")) is None
    for J in ks.nonempty_subsets():
        assert check_hereditary(S, key_set(ks, J)) is None
