import json
from itertools import combinations
from pathlib import Path

import pytest
from hypothesis import strategies as st

from semipoincare.semigroup import AmbientGroup, SemigroupPresentation, validate
from semipoincare.simplicial import Complex, submasks

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def numerical(*gens):
    return validate(SemigroupPresentation.numerical(*gens))


def choice(S, *elems):
    return S.choice_set([e if isinstance(e, tuple) else (e,) for e in elems])


def corpus_path(name):
    return CORPUS / name


def load_corpus(name):
    return json.loads((CORPUS / name).read_text())


RP2_FACETS = [
    (0, 1, 2), (0, 1, 3), (0, 2, 4), (0, 3, 5), (0, 4, 5),
    (1, 2, 5), (1, 3, 4), (1, 4, 5), (2, 3, 4), (2, 3, 5),
]


@pytest.fixture
def rp2():
    return Complex.from_facets(range(6), RP2_FACETS)


def brute_members(S, N):
    """Members of degree <= N by closing {0} under the generators (independent of the DFS oracle)."""
    amb = S.ambient
    seen = {amb.zero}
    frontier = [amb.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in S.generators:
                y = amb.add(x, g)
                if S.degree(y) <= N and y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def brute_tm(S, E, m):
    """T_m by querying every subset of E against the brute-force member set."""
    amb = S.ambient
    members = brute_members(S, S.degree(m))
    faces = set()
    for mask in range(1 << len(E)):
        x = m
        for i in range(len(E)):
            if mask >> i & 1:
                x = amb.sub(x, E[i])
        if x in members:
            faces.add(mask)
    return faces


# -- hypothesis strategies ----------------------------------------------------------


@st.composite
def small_semigroups(draw):
    """Positive semigroups in Z, Z^2 or Z x Z/2, with a handful of generators."""
    kind = draw(st.sampled_from(["numerical", "plane", "torsion"]))
    if kind == "numerical":
        gens = draw(st.lists(st.integers(2, 9), min_size=1, max_size=4, unique=True))
        pres = SemigroupPresentation.numerical(*gens)
    elif kind == "plane":
        gens = draw(
            st.lists(
                st.tuples(st.integers(0, 3), st.integers(-1, 3)).filter(lambda g: g[0] >= 1 or g[1] >= 1).filter(
                    lambda g: g[1] >= 0 or g[0] >= 1
                ),
                min_size=1,
                max_size=4,
                unique=True,
            )
        )
        pres = SemigroupPresentation(AmbientGroup(2), tuple(gens))
    else:
        gens = draw(
            st.lists(st.tuples(st.integers(1, 4), st.integers(0, 1)), min_size=1, max_size=3, unique=True)
        )
        pres = SemigroupPresentation(AmbientGroup(1, (2,)), tuple(gens))
    return validate(pres)


@st.composite
def semigroup_with_choice(draw, max_e=4):
    """(S, E): E a nonempty set of distinct nonzero members, mostly generators, sometimes sums."""
    S = draw(small_semigroups())
    amb = S.ambient
    pool = list(S.generators)
    for a, b in combinations(S.generators, 2):
        pool.append(amb.add(a, b))
    pool = list(dict.fromkeys(pool))
    E = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=min(max_e, len(pool)), unique=True))
    return S, S.choice_set(E)


@st.composite
def complexes(draw, max_n=8):
    """Random downward-closed complexes (never void) on 1..max_n vertices."""
    n = draw(st.integers(1, max_n))
    facets = draw(st.lists(st.integers(0, (1 << n) - 1), max_size=6))
    faces = {0}
    for f in facets:
        faces.update(submasks(f))
    return Complex(range(n), faces, check=False)


def bound_for(S, E, budget=25):
    """A bound around 25 scaled to the grading, kept small for 2-dimensional S."""
    w = max(S.degree(e) for e in E)
    if S.ambient.free_rank > 1:
        return max(2 * w, min(budget // 2, 4 * w + 2))
    return max(budget, 3 * w)


# -- acceptance summary -------------------------------------------------------------

ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
