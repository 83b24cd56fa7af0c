"""Finite abstract simplicial complexes with faces stored as bitmasks.

Bit ``i`` of a face mask stands for ``ground_set[i]``.  The void complex
(no faces at all) and the complex ``{emptyset}`` are distinct values.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import EmptySupportError, MembershipError
from .linalg import check_characteristic, rank

MAX_GROUND_SET = 24


def bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def submasks(mask: int):
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced homology dimensions; ``dims[i + 1]`` is h_i for i >= -1."""

    characteristic: int
    dims: tuple

    def h(self, i: int) -> int:
        k = i + 1
        return self.dims[k] if 0 <= k < len(self.dims) else 0

    @property
    def euler(self) -> int:
        return sum((-1) ** (k - 1) * v for k, v in enumerate(self.dims))

    def nonzero(self) -> dict:
        return {k - 1: v for k, v in enumerate(self.dims) if v}


class Complex:
    def __init__(self, ground_set, faces=(), check: bool = True):
        self.ground_set = tuple(ground_set)
        if len(self.ground_set) > MAX_GROUND_SET:
            raise ValueError(f"ground set larger than {MAX_GROUND_SET}")
        if len(set(self.ground_set)) != len(self.ground_set):
            raise ValueError("ground set labels must be distinct")
        self.faces = frozenset(faces)
        if check:
            full = (1 << len(self.ground_set)) - 1
            if any(f & ~full for f in self.faces):
                raise ValueError("face outside the ground set")
            if not self.is_downward_closed():
                raise ValueError("faces are not closed under taking subsets")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_facets(cls, ground_set, facets) -> "Complex":
        ground_set = tuple(ground_set)
        index = {v: i for i, v in enumerate(ground_set)}
        faces = set()
        for facet in facets:
            mask = 0
            for v in facet:
                mask |= 1 << index[v]
            if mask not in faces:
                faces.update(submasks(mask))
        return cls(ground_set, faces, check=False)

    @classmethod
    def void(cls, ground_set) -> "Complex":
        return cls(ground_set, (), check=False)

    @classmethod
    def empty_face(cls, ground_set) -> "Complex":
        return cls(ground_set, (0,), check=False)

    @classmethod
    def simplex(cls, ground_set) -> "Complex":
        ground_set = tuple(ground_set)
        return cls(ground_set, submasks((1 << len(ground_set)) - 1), check=False)

    # -- basic queries ----------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Complex)
            and self.ground_set == other.ground_set
            and self.faces == other.faces
        )

    def __hash__(self):
        return hash((self.ground_set, self.faces))

    def __repr__(self):
        return f"Complex(ground_set={list(self.ground_set)}, facets={self.facet_labels()})"

    def __contains__(self, labels):
        return self.mask(labels) in self.faces

    def __len__(self):
        return len(self.faces)

    @property
    def n(self) -> int:
        return len(self.ground_set)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def mask(self, labels) -> int:
        index = {v: i for i, v in enumerate(self.ground_set)}
        m = 0
        for v in labels:
            m |= 1 << index[v]
        return m

    def labels(self, mask: int) -> tuple:
        return tuple(self.ground_set[i] for i in bits(mask))

    def is_void(self) -> bool:
        return not self.faces

    def is_downward_closed(self) -> bool:
        faces = self.faces
        if faces and 0 not in faces:
            return False
        return all(f ^ (1 << i) in faces for f in faces for i in bits(f))

    @property
    def support_mask(self) -> int:
        m = 0
        for i in range(self.n):
            if 1 << i in self.faces:
                m |= 1 << i
        return m

    def support(self) -> tuple:
        return self.labels(self.support_mask)

    @property
    def dimension(self):
        """Largest face dimension; ``None`` for the void complex."""
        if not self.faces:
            return None
        return max(f.bit_count() for f in self.faces) - 1

    def is_full_simplex(self) -> bool:
        return self.full_mask in self.faces

    def facets(self) -> list:
        """Maximal faces as masks, ordered by size then by index tuple."""
        out = []
        for f in self.faces:
            if all(f | (1 << i) not in self.faces for i in range(self.n) if not f >> i & 1):
                out.append(f)
        return sorted(out, key=lambda f: (f.bit_count(), tuple(bits(f))))

    def facet_labels(self) -> list:
        return [list(self.labels(f)) for f in self.facets()]

    # -- invariants -------------------------------------------------------------

    def euler_char(self) -> int:
        """Reduced Euler characteristic: sum over faces of (-1)^(#J - 1)."""
        return sum(-1 if f.bit_count() % 2 == 0 else 1 for f in self.faces)

    def f_vector(self) -> list:
        counts = [0] * (self.n + 1)
        for f in self.faces:
            counts[f.bit_count()] += 1
        return counts

    def reduced_homology(self, characteristic: int = 0) -> HomologyProfile:
        check_characteristic(characteristic)
        n = self.n
        length = max(n, 1)
        if not self.faces:
            return HomologyProfile(characteristic, (0,) * length)
        by_size = [[] for _ in range(n + 1)]
        for f in self.faces:
            by_size[f.bit_count()].append(f)
        for level in by_size:
            level.sort()
        index = [{f: i for i, f in enumerate(level)} for level in by_size]
        # ranks[k] = rank of the boundary from faces of size k to size k - 1
        ranks = [0] * (n + 2)
        for k in range(1, n + 1):
            if not by_size[k] or not by_size[k - 1]:
                continue
            lower = index[k - 1]
            rows = []
            for f in by_size[k]:
                row = {}
                sign = 1
                for i in bits(f):
                    row[lower[f ^ (1 << i)]] = sign
                    sign = -sign
                rows.append(row)
            ranks[k] = rank(rows, characteristic)
        dims = [len(by_size[k]) - ranks[k] - ranks[k + 1] for k in range(n + 1)]
        # h_{n-1} is 0 for every complex on n vertices, so it is not reported
        return HomologyProfile(characteristic, tuple(dims[:length]))

    # -- duality ------------------------------------------------------------------

    def alexander_dual(self) -> "Complex":
        """{J in supp(T) : supp(T) minus J is not a face}, on the support."""
        supp = self.support_mask
        if supp == 0:
            raise EmptySupportError("Alexander dual needs a nonempty support")
        positions = list(bits(supp))
        faces = []
        for sub in submasks(supp):
            if supp ^ sub not in self.faces:
                faces.append(_compress(sub, positions))
        return Complex(self.labels(supp), faces, check=False)

    def relative_alexander_dual(self) -> "Complex":
        """{L in E : E minus L is not a face}, on the whole ground set."""
        full = self.full_mask
        faces = [sub for sub in submasks(full) if full ^ sub not in self.faces]
        return Complex(self.ground_set, faces, check=False)

    def find_sphere_masks(self, k: int) -> list:
        size = k + 2
        if size < 1 or size > self.n:
            return []
        out = []
        for combo in combinations(range(self.n), size):
            J = 0
            for i in combo:
                J |= 1 << i
            if J in self.faces:
                continue
            if all(J ^ (1 << i) in self.faces for i in combo):
                out.append(J)
        return out

    def find_spheres(self, k: int) -> list:
        """Minimal non-faces with k + 2 vertices, as label tuples in canonical order."""
        return [self.labels(J) for J in self.find_sphere_masks(k)]


def _compress(mask, positions):
    out = 0
    for j, p in enumerate(positions):
        if mask >> p & 1:
            out |= 1 << j
    return out


def euler_char(T: Complex) -> int:
    return T.euler_char()


def reduced_homology(T: Complex, characteristic: int = 0) -> HomologyProfile:
    return T.reduced_homology(characteristic)


def alexander_dual(T: Complex) -> Complex:
    return T.alexander_dual()


def relative_alexander_dual(T: Complex) -> Complex:
    return T.relative_alexander_dual()


def find_spheres(T: Complex, k: int) -> list:
    return T.find_spheres(k)


def build_Tm(S, E, m) -> Complex:
    """T_m = {J subset E : m - e_J in S}, vertices labelled by their index in E."""
    m = S.ambient.element(m)
    if not S.has(m):
        raise MembershipError(f"{m} is not in the semigroup")
    return Complex(range(len(E)), tm_faces(S, E, m), check=False)


def tm_faces(S, E, m) -> set:
    """Face masks of T_m, grown level by level (T_m is downward closed)."""
    sub = S.ambient.sub
    sums = E.subset_sums
    n = len(E)
    faces = {0}
    level = [0]
    while level:
        nxt = []
        for f in level:
            top = f.bit_length()
            for v in range(top, n):
                cand = f | (1 << v)
                if all(cand ^ (1 << u) in faces for u in bits(f)) and S.has(sub(m, sums[cand])):
                    nxt.append(cand)
        faces.update(nxt)
        level = nxt
    return faces
