import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semipoincare.errors import EmptySupportError, MembershipError
from semipoincare.simplicial import Complex, build_Tm, submasks

from conftest import brute_tm, complexes, semigroup_with_choice, bound_for, numerical, choice


def boundary_of_simplex(n):
    full = (1 << n) - 1
    return Complex(range(n), [f for f in submasks(full) if f != full], check=False)


def test_void_and_empty_face_differ():
    V = Complex.void(range(3))
    O = Complex.empty_face(range(3))
    assert V != O
    assert V.euler_char() == 0 and O.euler_char() == -1
    assert V.reduced_homology().dims == (0, 0, 0)
    assert O.reduced_homology().h(-1) == 1
    assert V.dimension is None and O.dimension == -1


def test_not_downward_closed_rejected():
    with pytest.raises(ValueError):
        Complex(range(2), [0, 0b11])


def test_two_points_homology():
    T = Complex.from_facets("ab", ["a", "b"])
    assert T.reduced_homology(0).nonzero() == {0: 1}
    assert T.euler_char() == 1


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_sphere_homology(n):
    T = boundary_of_simplex(n)
    prof = T.reduced_homology(0)
    assert prof.nonzero() == {n - 2: 1}
    assert T.find_sphere_masks(n - 2) == [(1 << n) - 1]


def test_projective_plane_depends_on_characteristic(rp2):
    assert rp2.f_vector() == [1, 6, 15, 10, 0, 0, 0]
    assert rp2.reduced_homology(2).nonzero() == {1: 1, 2: 1}
    assert rp2.reduced_homology(0).nonzero() == {}
    assert rp2.reduced_homology(3).nonzero() == {}
    assert rp2.euler_char() == 0


def test_alexander_dual_examples():
    T = Complex.from_facets(range(3), [(0,), (1,), (2,)])
    D = T.alexander_dual()
    # complements of the non-faces {0,1},{0,2},{1,2},{0,1,2}
    assert sorted(D.facet_labels()) == [[0], [1], [2]]
    with pytest.raises(EmptySupportError):
        Complex.empty_face(range(2)).alexander_dual()


def test_alexander_dual_on_support_only():
    T = Complex.from_facets(range(4), [(0, 1), (2,)])
    D = T.alexander_dual()
    assert D.ground_set == (0, 1, 2)
    R = T.relative_alexander_dual()
    assert R.ground_set == (0, 1, 2, 3)


def test_find_spheres_labels():
    T = Complex.from_facets("abc", ["ab", "bc", "ca"])
    assert T.find_spheres(1) == [("a", "b", "c")]
    assert T.find_spheres(0) == []


# -- duality properties (the acceptance suite runs the same checks at scale) ---------


@settings(max_examples=150, deadline=None)
@given(complexes(max_n=7), st.sampled_from([0, 2, 3]))
def test_duality_properties(T, char):
    n = T.n
    R = T.relative_alexander_dual()
    # reciprocity
    assert R.relative_alexander_dual() == T
    # Euler characteristics, including the convention for {emptyset}
    supp = T.support_mask
    if supp:
        D = T.alexander_dual()
        assert -T.euler_char() == (-1) ** supp.bit_count() * D.euler_char()
        dimD = D.dimension
        assert dimD is None or dimD <= supp.bit_count() - 3
        # T^dual is the relative dual's link of the complement of the support
        outside = ((1 << n) - 1) & ~supp
        positions = [i for i in range(n) if supp >> i & 1]
        inside = set()
        for f in R.faces:
            if f & outside == outside:
                c = 0
                for j, p in enumerate(positions):
                    if f >> p & 1:
                        c |= 1 << j
                inside.add(c)
        assert inside == set(D.faces)
    else:
        assert -T.euler_char() == 1
    assert -T.euler_char() == (-1) ** n * R.euler_char()
    assert T.dimension <= supp.bit_count() - 1
    # combinatorial duality over a field
    hT = T.reduced_homology(char)
    hR = R.reduced_homology(char)
    for ell in range(-1, n):
        assert hR.h(ell) == hT.h(n - ell - 3)


@settings(max_examples=100, deadline=None)
@given(complexes(max_n=7))
def test_euler_poincare(T):
    for char in (0, 2):
        assert T.reduced_homology(char).euler == T.euler_char()


# -- T_m -----------------------------------------------------------------------


def test_tm_examples():
    S = numerical(2, 3)
    E = choice(S, 2, 3)
    assert build_Tm(S, E, (6,)).facet_labels() == [[0], [1]]
    assert build_Tm(S, E, (0,)).faces == {0}
    assert build_Tm(S, E, (5,)).facet_labels() == [[0, 1]]
    with pytest.raises(MembershipError):
        build_Tm(S, E, (1,))


def test_tm_triangle_boundary():
    S = numerical(3, 4, 5)
    E = choice(S, 3, 4, 5)
    T = build_Tm(S, E, (13,))
    assert T.reduced_homology().nonzero() == {1: 1}
    assert T.find_sphere_masks(1) == [0b111]


@settings(max_examples=40, deadline=None)
@given(semigroup_with_choice())
def test_tm_matches_brute_force(SE):
    S, E = SE
    N = min(bound_for(S, E), 14)
    for m in S.enumerate_up_to(N)[:40]:
        assert build_Tm(S, E, m).faces == brute_tm(S, E, m)
