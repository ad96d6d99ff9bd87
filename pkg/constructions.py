"""
Complexes built from a simplicial complex L: the sphere-link complex S(L),
the repair complexes N(L) and M(L), finite covers given by permutation
voltages, and the comparison of S(cover) with the pulled-back cover of S(L).

S(L) has two vertices ``v+`` and ``v−`` for each vertex v of L (the second
suffix is U+2212). Cover vertices are named ``v#i`` with 1-based sheets.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from complexes import (ComplexError, OutOfBudget, SimplicialComplex, are_isomorphic, full_subcomplex,
                       is_connected, is_simplicial_map, simplex_name)
from enumeration import compare_hom_counts
from finite_groups import battery
from homology import profiles_agree, reduced_homology
from permutations import (Perm, all_perms, perm_compose, perm_from_one_based, perm_id, perm_invert,
                          perm_is_identity, perm_to_one_based)
from presentations import edge_path_presentation, simplify

logger = logging.getLogger(__name__)

PLUS = "+"
MINUS = "−"


def signed(v: str, sign: int) -> str:
    return f"{v}{PLUS if sign > 0 else MINUS}"


def unsigned(label: str) -> Tuple[str, int]:
    """Split ``v+`` / ``v−`` into the vertex and its sign."""
    if label.endswith(PLUS):
        return label[:-1], 1
    if label.endswith(MINUS):
        return label[:-1], -1
    raise ComplexError(f"{label} is not a vertex of a sphere-link complex")


def sheet_label(v: str, i: int) -> str:
    return f"{v}#{i}"


def split_sheet(label: str) -> Tuple[str, int]:
    v, _, i = label.rpartition("#")
    if not v:
        raise ComplexError(f"{label} is not a cover vertex")
    return v, int(i)


# -- the sphere-link complex --------------------------------------------------

@dataclass(frozen=True)
class SignFunction:
    """A choice of sign (+1 or -1) for every vertex."""
    signs: Mapping[str, int]

    def __call__(self, v: str) -> int:
        return self.signs[v]

    @classmethod
    def constant(cls, L: SimplicialComplex, sign: int = 1) -> "SignFunction":
        return cls({v: sign for v in L.vertices})

    @classmethod
    def random(cls, L: SimplicialComplex, rng: np.random.Generator) -> "SignFunction":
        draws = rng.integers(0, 2, size=len(L.vertices))
        return cls({v: 1 if d else -1 for v, d in zip(L.vertices, draws)})

    def check(self, L: SimplicialComplex):
        missing = [v for v in L.vertices if self.signs.get(v) not in (1, -1)]
        if missing:
            raise ComplexError(f"sign function has no sign for {missing}")


def sphere_link(L: SimplicialComplex) -> SimplicialComplex:
    """
    The link of the vertex of the Salvetti complex: every simplex of L is
    replaced by the join of 0-spheres over its vertices, so a k-simplex of
    L gives 2^(k+1) k-simplices.
    """
    vertices = [signed(v, s) for v in L.vertices for s in (1, -1)]
    tops = []
    for top in L.maximal_simplices():
        labels = L.labels(top)
        for signs in itertools.product((1, -1), repeat=len(labels)):
            tops.append([signed(v, s) for v, s in zip(labels, signs)])
    return SimplicialComplex(vertices, tops)


def projection_map(SL: SimplicialComplex) -> Dict[str, str]:
    """``v±`` to ``v``."""
    return {label: unsigned(label)[0] for label in SL.vertices}


def retraction_section(L: SimplicialComplex, g: SignFunction) -> Dict[str, str]:
    """The vertex map v -> v^g(v) from L into S(L)."""
    g.check(L)
    return {v: signed(v, g(v)) for v in L.vertices}


def section_is_simplicial(L: SimplicialComplex, g: SignFunction, SL: SimplicialComplex = None) -> bool:
    """Whether the section is simplicial and the projection undoes it."""
    SL = sphere_link(L) if SL is None else SL
    section = retraction_section(L, g)
    projection = projection_map(SL)
    return (is_simplicial_map(section, L, SL)
            and all(projection[section[v]] == v for v in L.vertices))


# -- N(L) and M(L) ------------------------------------------------------------

def _full_flags(s: Tuple[int, ...]):
    """Chains of faces of s growing by one vertex at a time, ending at s."""
    for order in itertools.permutations(s):
        yield [tuple(sorted(order[:k])) for k in range(1, len(order) + 1)]


def _cylinder_names(L: SimplicialComplex) -> Dict[Tuple[int, ...], str]:
    names = {s: simplex_name(L.labels(s)) for s in L.simplices}
    clashes = sorted(set(names.values()) & set(L.vertices))
    if clashes:
        raise ComplexError(f"simplex names {clashes} collide with vertex names")
    return names


def mapping_cylinder_N(L: SimplicialComplex) -> SimplicialComplex:
    """
    N(L): vertices are the vertices of L and the simplices of L. A set of
    vertices v_0..v_k and simplices s_1 < ... < s_m spans a simplex when the
    v_i span a simplex of L, the s_j form a chain and every v_i lies in
    every s_j.

    Raises
    ------
    ComplexError
        If L has an isolated vertex.
    """
    _check_no_isolated(L)
    names = _cylinder_names(L)
    vertices = list(L.vertices) + [names[s] for s in sorted(L.simplices, key=lambda s: (len(s), s))]
    tops = set()
    for top in L.maximal_simplices():
        for flag in _full_flags(top):
            for t, bottom in enumerate(flag):
                tops.add(tuple(L.labels(bottom)) + tuple(names[s] for s in flag[t:]))
    n = SimplicialComplex(vertices, tops)
    logger.debug(f"N(L): f-vector {n.f_vector()}")
    return n


def _check_no_isolated(L: SimplicialComplex):
    touched = {x for e in L.faces(1) for x in e}
    isolated = [v for i, v in enumerate(L.vertices) if i not in touched]
    if isolated:
        raise ComplexError(f"L has isolated vertices {isolated}")


def nlcp_repair_M(L: SimplicialComplex) -> Tuple[SimplicialComplex, Dict[str, str]]:
    """
    M(L): the full subcomplex of N(L) on the vertices of L and the 0- and
    1-simplices of L. It has no local cut points, contains L as a full
    subcomplex, has the homotopy type of L, and has the dimension of L
    when dim L >= 2.

    Returns the complex and the embedding of L (identity on names).
    """
    n = mapping_cylinder_N(L)
    names = _cylinder_names(L)
    keep = list(L.vertices) + [names[s] for s in L.faces(0)] + [names[s] for s in L.faces(1)]
    m = full_subcomplex(n, keep)
    logger.info(f"M(L): {len(m.vertices)} vertices, f-vector {m.f_vector()}")
    return m, {v: v for v in L.vertices}


# -- voltages and covers ------------------------------------------------------

class VoltageError(ValueError):
    """A voltage assignment that breaks the inverse or triangle condition."""


@dataclass
class VoltageAssignment:
    """
    Permutations of {1..degree} on the directed edges of ``base``.

    Edges not listed carry the identity; the reverse direction is filled
    in with the inverse. ``rho(x, y)`` composed with ``rho(y, z)`` (left to
    right) must equal ``rho(x, z)`` on every triangle.
    """
    base: SimplicialComplex
    degree: int
    perms: Dict[Tuple[str, str], Perm] = field(default_factory=dict)

    def __post_init__(self):
        if self.degree < 1:
            raise VoltageError("degree must be positive")
        given = dict(self.perms)
        self.perms = {}
        for (x, y), p in given.items():
            p = tuple(p)
            if len(p) != self.degree or sorted(p) != list(range(self.degree)):
                raise VoltageError(f"edge {x}->{y}: not a permutation of degree {self.degree}")
            if not self.base.has_simplex((x, y)) or x == y:
                raise VoltageError(f"edge {x}->{y} is not an edge of the base complex")
            if (y, x) in given and perm_invert(p) != tuple(given[y, x]):
                raise VoltageError(f"edge {x}->{y}: the reverse permutation is not the inverse")
            self.perms[x, y] = p
            self.perms[y, x] = perm_invert(p)
        self.check_cocycle()

    @classmethod
    def trivial(cls, L: SimplicialComplex, degree: int) -> "VoltageAssignment":
        return cls(L, degree)

    @classmethod
    def from_one_based(cls, L: SimplicialComplex, degree: int,
                       edges: Sequence[Tuple[str, str, Sequence[int]]]) -> "VoltageAssignment":
        perms = {}
        for x, y, images in edges:
            try:
                perms[str(x), str(y)] = perm_from_one_based(images)
            except ValueError as exc:
                raise VoltageError(f"edge {x}->{y}: {exc}") from None
        return cls(L, degree, perms)

    def rho(self, x: str, y: str) -> Perm:
        if x == y:
            return perm_id(self.degree)
        return self.perms.get((x, y), perm_id(self.degree))

    def check_cocycle(self):
        for i, j, k in self.base.faces(2):
            x, y, z = self.base.labels((i, j, k))
            if perm_compose(self.rho(x, y), self.rho(y, z)) != self.rho(x, z):
                raise VoltageError(f"triangle {x},{y},{z} violates the cocycle condition")

    def edges(self) -> List[Tuple[str, str, List[int]]]:
        """One direction per edge (sorted vertex order), non-identity only, 1-based."""
        out = []
        for i, j in self.base.faces(1):
            x, y = self.base.labels((i, j))
            p = self.rho(x, y)
            if not perm_is_identity(p):
                out.append((x, y, perm_to_one_based(p)))
        return out


@dataclass
class Cover:
    """A finite cover ``complex -> base`` with its vertex projection."""
    complex: SimplicialComplex
    base: SimplicialComplex
    projection: Dict[str, str]
    voltage: VoltageAssignment

    @property
    def degree(self) -> int:
        return self.voltage.degree

    def sheet(self, label: str) -> int:
        return split_sheet(label)[1]

    def fibre(self, v: str) -> List[str]:
        return [sheet_label(v, i) for i in range(1, self.degree + 1)]


def build_cover(L: SimplicialComplex, rho: VoltageAssignment) -> Cover:
    """
    The d-fold cover with vertices (v, i): over a simplex v_0 < ... < v_k of
    L and a sheet i_0, the vertices (v_j, rho(v_0, v_j)(i_0)) span a simplex.
    """
    if rho.base != L:
        raise VoltageError("voltage is defined on a different complex")
    if not is_connected(L):
        raise ComplexError("covers are built over connected complexes")
    d = rho.degree
    vertices = [sheet_label(v, i) for v in L.vertices for i in range(1, d + 1)]
    tops = []
    for top in L.maximal_simplices():
        labels = L.labels(top)
        first = labels[0]
        for i in range(d):
            tops.append([sheet_label(v, rho.rho(first, v)[i] + 1) for v in labels])
    cover = SimplicialComplex(vertices, tops)
    projection = {label: split_sheet(label)[0] for label in vertices}
    logger.info(f"built {d}-fold cover: f-vector {cover.f_vector()}")
    return Cover(cover, L, projection, rho)


def lifted_voltage(L: SimplicialComplex, rho: VoltageAssignment, SL: SimplicialComplex = None) -> VoltageAssignment:
    """The voltage on S(L) giving the edge {v^e, w^f} the permutation rho(v, w)."""
    SL = sphere_link(L) if SL is None else SL
    perms = {}
    for i, j in SL.faces(1):
        a, b = SL.labels((i, j))
        perms[a, b] = rho.rho(unsigned(a)[0], unsigned(b)[0])
    return VoltageAssignment(SL, rho.degree, perms)


@dataclass
class PullbackResult:
    isomorphic: bool
    isomorphism: Optional[Dict[str, str]]
    sphere_of_cover: SimplicialComplex
    cover_of_sphere: Cover


def pullback_square_check(L: SimplicialComplex, rho: VoltageAssignment, budget: int = None) -> PullbackResult:
    """
    Compare S(cover(L)) with the cover of S(L) pulled back along the
    projection. The isomorphism must respect sheets and signs:
    ``v#i`` with sign e goes to ``v`` with sign e on sheet i.
    """
    if len(L.vertices) < 2:
        raise ComplexError("the pullback square needs L other than a point")
    cover = build_cover(L, rho)
    left = sphere_link(cover.complex)
    SL = sphere_link(L)
    right = build_cover(SL, lifted_voltage(L, rho, SL))

    def expected(label: str) -> str:
        base, sign = unsigned(label)
        v, i = split_sheet(base)
        return sheet_label(signed(v, sign), i)

    hint = {label: expected(label) for label in left.vertices}

    def compatible(a: str, b: str) -> bool:
        return right.projection[b] == unsigned(a)[0].rpartition("#")[0] + a[-1]

    kwargs = {} if budget is None else {"budget": budget}
    found = are_isomorphic(left, right.complex, hint=hint, compatible=compatible, **kwargs)
    if isinstance(found, OutOfBudget):
        logger.warning("pullback square check ran out of budget")
        found = None
    ok = isinstance(found, dict)
    logger.info(f"pullback square: {'isomorphic' if ok else 'no isomorphism'}")
    return PullbackResult(ok, found if ok else None, left, right)


def opposite_pairs(cover: Cover) -> Dict[str, str]:
    """
    Pair the vertices of a cover of S(L) that are joined by an edge path of
    length two and project to v+ and v−.

    The cover must be pulled back from a cover of L, though not necessarily
    the universal one: the length-four loop through both partners maps to
    a backtracking loop in L, which is null-homotopic in any cover.

    Raises
    ------
    ComplexError
        If a vertex has no partner or several.
    RuntimeError
        If the matching differs from the sheet pairing (v+, i) <-> (v−, i).
    """
    c = cover.complex
    adjacency = {v: set() for v in c.vertices}
    for i, j in c.faces(1):
        a, b = c.labels((i, j))
        adjacency[a].add(b)
        adjacency[b].add(a)
    fibres: Dict[str, List[str]] = {}
    for label, image in cover.projection.items():
        fibres.setdefault(image, []).append(label)
    matching = {}
    for label in c.vertices:
        v, sign = unsigned(cover.projection[label])
        opposite = signed(v, -sign)
        candidates = [w for w in fibres.get(opposite, []) if adjacency[label] & adjacency[w]]
        if len(candidates) != 1:
            raise ComplexError(f"{label} has {len(candidates)} opposite candidates")
        matching[label] = candidates[0]
    for a, b in matching.items():
        if matching[b] != a:
            raise ComplexError(f"opposite pairing is not an involution at {a}")
        base, i = split_sheet(a)
        v, sign = unsigned(base)
        if b != sheet_label(signed(v, -sign), i):
            raise RuntimeError(f"opposite partner of {a} is {b}, not the sheet partner")
    return matching


# -- voltages from groups -----------------------------------------------------

def voltage_from_homomorphism(L: SimplicialComplex, images: Sequence[Sequence[int]], degree: int = None) -> VoltageAssignment:
    """
    Voltage from a homomorphism of the edge-path group to Sym(d), given by
    the (0-based) images of the edge generators in ``L.faces(1)`` order.
    The images must satisfy the triangle relators; spanning-tree edges may
    carry any permutation consistent with them.
    """
    edges = L.faces(1)
    if len(images) != len(edges):
        raise VoltageError(f"expected {len(edges)} edge images, got {len(images)}")
    degree = len(images[0]) if images else (degree or 1)
    perms = {L.labels(e): tuple(p) for e, p in zip(edges, images)}
    return VoltageAssignment(L, degree, perms)


def _induced_direction(t: Tuple[int, int, int], a: int, b: int) -> bool:
    """Whether the boundary orientation of the sorted triangle t runs a -> b."""
    p, q, r = t
    return (a, b) in ((p, q), (q, r), (r, p))


def orientation_double_voltage(L: SimplicialComplex) -> VoltageAssignment:
    """
    The degree-2 voltage of the orientation double cover of a closed
    surface: a swap on edge xy exactly when the orientations of the stars
    of x and y disagree on the triangles through xy.

    Raises
    ------
    ComplexError
        If some edge does not lie in exactly two triangles or a vertex link
        is not a single circle.
    """
    triangles_on: Dict[Tuple[int, int], List[Tuple[int, int, int]]] = {e: [] for e in L.faces(1)}
    for t in L.faces(2):
        for e in itertools.combinations(t, 2):
            triangles_on[e].append(t)
    bad = [L.labels(e) for e, ts in triangles_on.items() if len(ts) != 2]
    if bad or L.dimension != 2:
        raise ComplexError(f"not a closed surface: edges {bad[:3]} are not in exactly two triangles")

    def mismatch(e: Tuple[int, int]) -> int:
        t1, t2 = triangles_on[e]
        a, b = e
        return int(_induced_direction(t1, a, b) == _induced_direction(t2, a, b))

    # star orientation at each vertex: flip bit per triangle, least triangle unflipped
    state: Dict[int, Dict[Tuple[int, int, int], int]] = {}
    for v in range(len(L.vertices)):
        around = sorted(t for t in L.faces(2) if v in t)
        if not around:
            raise ComplexError(f"vertex {L.vertices[v]} lies in no triangle")
        bits = {around[0]: 0}
        queue = [around[0]]
        while queue:
            t = queue.pop()
            for e in itertools.combinations(t, 2):
                if v not in e:
                    continue
                for u in triangles_on[e]:
                    if u == t:
                        continue
                    bit = bits[t] ^ mismatch(e)
                    if u not in bits:
                        bits[u] = bit
                        queue.append(u)
                    elif bits[u] != bit:
                        raise ComplexError(f"the star of {L.vertices[v]} is not orientable")
        if len(bits) != len(around):
            raise ComplexError(f"the link of {L.vertices[v]} is not a single circle")
        state[v] = bits

    swap = (1, 0)
    perms = {}
    for e, ts in triangles_on.items():
        a, b = e
        if state[a][ts[0]] ^ state[b][ts[0]]:
            perms[L.labels(e)] = swap
    logger.info(f"orientation voltage: {len(perms)} of {len(triangles_on)} edges swap sheets")
    return VoltageAssignment(L, 2, perms)


def deck_transformations(cover: Cover, max_degree: int = 6) -> List[Dict[str, str]]:
    """
    The sheet permutations s with (v, i) -> (v, s(i)) an automorphism of
    the cover: exactly those commuting with every edge voltage. The
    identity comes first.
    """
    d = cover.degree
    if d > max_degree:
        raise ValueError(f"deck search is limited to degree {max_degree}")
    voltages = [cover.voltage.rho(x, y) for (x, y) in cover.voltage.perms]
    maps = []
    for s in all_perms(d):
        if all(perm_compose(s, p) == perm_compose(p, s) for p in voltages):
            maps.append({sheet_label(v, i + 1): sheet_label(v, s[i] + 1)
                         for v in cover.base.vertices for i in range(d)})
    return maps


# -- homotopy-type checks -----------------------------------------------------

@dataclass
class HomotopyCheck:
    homology_equal: bool
    hom_counts: Dict[str, Tuple[int, int]]

    @property
    def passed(self) -> bool:
        return self.homology_equal and all(a == b for a, b in self.hom_counts.values())


def check_homotopy_invariants(L: SimplicialComplex, M: SimplicialComplex, max_order: int = 6) -> HomotopyCheck:
    """
    Necessary conditions for the inclusion L -> M to be a homotopy
    equivalence: equal reduced integral homology and, for connected
    complexes, equal homomorphism counts from the edge-path groups into
    every group of order at most ``max_order``.
    """
    same = profiles_agree(reduced_homology(L), reduced_homology(M))
    counts: Dict[str, Tuple[int, int]] = {}
    if is_connected(L) and is_connected(M):
        p1 = simplify(edge_path_presentation(L))
        p2 = simplify(edge_path_presentation(M))
        counts = compare_hom_counts(p1, p2, battery(max_order))
    check = HomotopyCheck(same, counts)
    if not check.passed:
        logger.warning(f"homotopy invariants differ: homology equal {same}, counts {counts}")
    return check
