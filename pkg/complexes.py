"""
Finite abstract simplicial complexes, Delta-complexes and polygonal
2-complexes, with the predicates and subdivisions built on them.

Simplices are stored as sorted tuples of vertex indices; vertex identifiers
are strings and the index of a vertex is its position in ``vertices``.
"""
import itertools
import logging
from collections import deque
from dataclasses import dataclass
from typing import (Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional,
                    Sequence, Set, Tuple, Union)

import networkx as nx
import numpy as np

logger = logging.getLogger(__name__)

Simplex = Tuple[int, ...]

ISO_BUDGET = 10 ** 7


class ComplexError(ValueError):
    """Malformed complex, unknown vertex, or an unmet precondition."""


@dataclass(frozen=True)
class OutOfBudget:
    """A search stopped by its step budget before deciding anything."""
    what: str
    limit: int
    used: int


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    detail: str


def simplex_name(labels: Sequence[str]) -> str:
    """Vertex name used for a simplex in subdivisions and mapping cylinders."""
    return "(" + ",".join(labels) + ")"


def _closure(simplices: Iterable[Simplex]) -> Set[Simplex]:
    closed: Set[Simplex] = set()
    for s in sorted(set(simplices), key=len, reverse=True):
        if s in closed:
            continue
        for k in range(1, len(s) + 1):
            closed.update(itertools.combinations(s, k))
    return closed


class SimplicialComplex:
    """
    A finite abstract simplicial complex.

    Parameters
    ----------
    vertices : sequence of str
        Vertex identifiers; their order fixes the vertex indices.
    simplices : iterable of sequences of str
        Simplices given by vertex identifiers, typically the maximal ones.
    close : bool, optional
        Close the simplices under faces and add every vertex as a 0-simplex
        (default). With ``close=False`` the input is kept as given and
        malformed input is recorded for ``validate`` instead of raising.
    """

    def __init__(self, vertices: Sequence[str], simplices: Iterable[Sequence[str]] = (), close: bool = True):
        self.vertices: Tuple[str, ...] = tuple(str(v) for v in vertices)
        self._index: Dict[str, int] = {}
        self._problems: List[Diagnostic] = []
        for i, v in enumerate(self.vertices):
            if v in self._index:
                if close:
                    raise ComplexError(f"duplicate vertex id: {v}")
                self._problems.append(Diagnostic("duplicate_vertex", v))
                continue
            self._index[v] = i
        found: Set[Simplex] = set()
        for s in simplices:
            labels = [str(x) for x in s]
            if not labels:
                continue
            unknown = [x for x in labels if x not in self._index]
            if unknown:
                if close:
                    raise ComplexError(f"simplex {labels} references unknown vertices {unknown}")
                self._problems.append(Diagnostic("dangling_vertex", f"{labels} references {unknown}"))
                continue
            if len(set(labels)) != len(labels):
                if close:
                    raise ComplexError(f"simplex {labels} lists a vertex twice")
                self._problems.append(Diagnostic("repeated_vertex", f"{labels}"))
                continue
            found.add(tuple(sorted(self._index[x] for x in labels)))
        if close:
            found = _closure(found) | {(i,) for i in self._index.values()}
        self.simplices: FrozenSet[Simplex] = frozenset(found)
        self._faces: Optional[Dict[int, List[Simplex]]] = None

    @classmethod
    def from_indices(cls, vertices: Sequence[str], simplices: Iterable[Sequence[int]], close: bool = True) -> "SimplicialComplex":
        vertices = list(vertices)
        return cls(vertices, ([vertices[i] for i in s] for s in simplices), close=close)

    @classmethod
    def from_maximal(cls, simplices: Iterable[Sequence[str]]) -> "SimplicialComplex":
        """Vertices in order of first appearance."""
        simplices = [list(map(str, s)) for s in simplices]
        vertices = list(dict.fromkeys(v for s in simplices for v in s))
        return cls(vertices, simplices)

    # -- structure -------------------------------------------------------

    @property
    def dimension(self) -> int:
        return max((len(s) for s in self.simplices), default=0) - 1

    def faces(self, k: int) -> List[Simplex]:
        """The k-simplices as sorted index tuples, in lexicographic order."""
        if self._faces is None:
            by_dim: Dict[int, List[Simplex]] = {}
            for s in self.simplices:
                by_dim.setdefault(len(s) - 1, []).append(s)
            self._faces = {d: sorted(v) for d, v in by_dim.items()}
        return self._faces.get(k, [])

    def f_vector(self) -> Tuple[int, ...]:
        return tuple(len(self.faces(k)) for k in range(self.dimension + 1))

    def maximal_simplices(self) -> List[Simplex]:
        covered: Set[Simplex] = set()
        for s in self.simplices:
            if len(s) > 1:
                covered.update(itertools.combinations(s, len(s) - 1))
        return sorted((s for s in self.simplices if s not in covered), key=lambda s: (len(s), s))

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ComplexError(f"unknown vertex: {label}") from None

    def labels(self, simplex: Iterable[int]) -> Tuple[str, ...]:
        return tuple(self.vertices[i] for i in simplex)

    def has_simplex(self, labels: Iterable[str]) -> bool:
        try:
            key = tuple(sorted(self._index[x] for x in labels))
        except KeyError:
            return False
        return key in self.simplices

    def label_simplices(self) -> FrozenSet[FrozenSet[str]]:
        return frozenset(frozenset(self.labels(s)) for s in self.simplices)

    def graph(self) -> nx.Graph:
        """1-skeleton on vertex indices."""
        g = nx.Graph()
        g.add_nodes_from(range(len(self.vertices)))
        g.add_edges_from(self.faces(1))
        return g

    def one_skeleton(self) -> nx.Graph:
        """1-skeleton on vertex identifiers."""
        return nx.relabel_nodes(self.graph(), dict(enumerate(self.vertices)))

    def relabel(self, mapping: Mapping[str, str]) -> "SimplicialComplex":
        new = [mapping.get(v, v) for v in self.vertices]
        return SimplicialComplex.from_indices(new, self.simplices)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return set(self.vertices) == set(other.vertices) and self.label_simplices() == other.label_simplices()

    def __hash__(self) -> int:
        return hash(self.label_simplices())

    def __repr__(self) -> str:
        return f"SimplicialComplex(vertices={len(self.vertices)}, f_vector={self.f_vector()})"


# -- diagnostics and predicates ---------------------------------------------

def validate(c: SimplicialComplex) -> List[Diagnostic]:
    """Closure violations, duplicate vertices and dangling references; empty when valid."""
    report = list(c._problems)
    for i in sorted(set(c._index.values())):
        if (i,) not in c.simplices:
            report.append(Diagnostic("closure", f"vertex {c.vertices[i]} is not a 0-simplex"))
    for s in sorted(c.simplices, key=lambda s: (len(s), s)):
        if len(s) < 2:
            continue
        for face in itertools.combinations(s, len(s) - 1):
            if face not in c.simplices:
                report.append(Diagnostic("closure", f"face {list(c.labels(face))} of {list(c.labels(s))} is missing"))
    return report


def is_flag(c: SimplicialComplex) -> bool:
    # cliques come in order of size, so the first non-face found is minimal
    for clique in nx.enumerate_all_cliques(c.graph()):
        if len(clique) >= 3 and tuple(sorted(clique)) not in c.simplices:
            return False
    return True


def link(c: SimplicialComplex, v: str) -> SimplicialComplex:
    i = c.index(v)
    rest = [tuple(x for x in s if x != i) for s in c.simplices if i in s and len(s) > 1]
    used = sorted({x for s in rest for x in s})
    return SimplicialComplex([c.vertices[x] for x in used], (c.labels(s) for s in rest))


def star(c: SimplicialComplex, v: str) -> SimplicialComplex:
    i = c.index(v)
    top = [s for s in c.simplices if i in s]
    used = sorted({x for s in top for x in s})
    return SimplicialComplex([c.vertices[x] for x in used], (c.labels(s) for s in top))


def is_connected(c: SimplicialComplex) -> bool:
    if not c.vertices:
        return False
    return nx.is_connected(c.graph())


def euler_characteristic(c: SimplicialComplex) -> int:
    return sum((-1) ** k * n for k, n in enumerate(c.f_vector()))


def has_nlcp(c: SimplicialComplex) -> bool:
    """
    Every edge lies in a triangle and every vertex link is connected.

    Raises
    ------
    ComplexError
        If ``c`` has an isolated vertex.
    """
    touched = {x for e in c.faces(1) for x in e}
    for i, v in enumerate(c.vertices):
        if i not in touched:
            raise ComplexError(f"nlcp is only defined without isolated vertices; {v} is isolated")
    in_triangle = {e for t in c.faces(2) for e in itertools.combinations(t, 2)}
    for e in c.faces(1):
        if e not in in_triangle:
            logger.info(f"edge {c.labels(e)} lies in no triangle")
            return False
    for v in c.vertices:
        if not is_connected(link(c, v)):
            logger.info(f"link of {v} is disconnected")
            return False
    return True


def full_subcomplex(c: SimplicialComplex, vertexset: Iterable[str]) -> SimplicialComplex:
    keep = {c.index(v) for v in vertexset}
    vertices = [v for i, v in enumerate(c.vertices) if i in keep]
    return SimplicialComplex(vertices, (c.labels(s) for s in c.simplices if keep.issuperset(s)))


def is_full(c: SimplicialComplex, sub: SimplicialComplex, embedding: Mapping[str, str] = None) -> bool:
    """Whether ``sub`` (relabelled through ``embedding``) is the full subcomplex of ``c`` on its vertices."""
    if embedding is not None:
        sub = sub.relabel(embedding)
    if any(v not in c for v in sub.vertices):
        return False
    return full_subcomplex(c, sub.vertices) == sub


def is_simplicial_map(f: Mapping[str, str], source: SimplicialComplex, target: SimplicialComplex) -> bool:
    return all(target.has_simplex({f[x] for x in source.labels(s)}) for s in source.simplices)


def is_isomorphism(f: Mapping[str, str], c1: SimplicialComplex, c2: SimplicialComplex) -> bool:
    if len(c1.vertices) != len(c2.vertices) or len(set(f.values())) != len(c1.vertices):
        return False
    if any(v not in f or f[v] not in c2 for v in c1.vertices):
        return False
    return len(c1.simplices) == len(c2.simplices) and is_simplicial_map(f, c1, c2)


# -- isomorphism search -----------------------------------------------------

def _vertex_signatures(c: SimplicialComplex) -> List[tuple]:
    counts = [[0] * (c.dimension + 1) for _ in c.vertices]
    for s in c.simplices:
        for x in s:
            counts[x][len(s) - 1] += 1
    degree = [row[1] if len(row) > 1 else 0 for row in counts]
    adjacency = _adjacency(c)
    return [(tuple(counts[i]), tuple(sorted(degree[j] for j in adjacency[i]))) for i in range(len(c.vertices))]


def _adjacency(c: SimplicialComplex) -> List[Set[int]]:
    adjacency: List[Set[int]] = [set() for _ in c.vertices]
    for a, b in c.faces(1):
        adjacency[a].add(b)
        adjacency[b].add(a)
    return adjacency


def are_isomorphic(c1: SimplicialComplex, c2: SimplicialComplex, budget: int = ISO_BUDGET,
                   hint: Mapping[str, str] = None,
                   compatible: Callable[[str, str], bool] = None) -> Union[Dict[str, str], None, OutOfBudget]:
    """
    Search for a simplicial isomorphism ``c1 -> c2``.

    Vertices are assigned in breadth-first order so each new vertex has a
    mapped neighbour; candidates must share the vertex signature (simplex
    counts and neighbour degrees) and keep every fully mapped simplex a
    simplex. ``hint`` (or equal labels) decides which candidate is tried
    first; ``compatible`` restricts candidates.

    Returns
    -------
    dict, None or OutOfBudget
        The vertex bijection, ``None`` if there is none, or ``OutOfBudget``
        when more than ``budget`` candidate assignments were tried.
    """
    if len(c1.vertices) != len(c2.vertices) or c1.f_vector() != c2.f_vector():
        return None
    n = len(c1.vertices)
    if n == 0:
        return {}
    sig1, sig2 = _vertex_signatures(c1), _vertex_signatures(c2)
    if sorted(sig1) != sorted(sig2):
        return None
    adj1, adj2 = _adjacency(c1), _adjacency(c2)
    higher: List[List[Simplex]] = [[] for _ in range(n)]
    for s in c1.simplices:
        if len(s) >= 3:
            for x in s:
                higher[x].append(s)
    by_sig: Dict[tuple, List[int]] = {}
    for x, s in enumerate(sig2):
        by_sig.setdefault(s, []).append(x)
    rarity = {s: len(v) for s, v in by_sig.items()}

    order: List[int] = []
    parent: Dict[int, Optional[int]] = {}
    remaining = set(range(n))
    while remaining:
        root = min(remaining, key=lambda u: (rarity[sig1[u]], u))
        queue = deque([root])
        parent[root] = None
        remaining.discard(root)
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in sorted(adj1[u]):
                if w in remaining:
                    remaining.discard(w)
                    parent[w] = u
                    queue.append(w)

    preferred: Dict[int, int] = {}
    for u, label in enumerate(c1.vertices):
        target = (hint or {}).get(label, label)
        if target in c2:
            preferred[u] = c2.index(target)

    image = [-1] * n
    used = [False] * n

    def candidates(u: int) -> List[int]:
        pool = adj2[image[parent[u]]] if parent[u] is not None else by_sig[sig1[u]]
        found = [x for x in pool if not used[x] and sig2[x] == sig1[u]
                 and (compatible is None or compatible(c1.vertices[u], c2.vertices[x]))]
        return sorted(found, key=lambda x: (x != preferred.get(u), x))

    def consistent(u: int, x: int) -> bool:
        mapped = 0
        for w in adj1[u]:
            if image[w] >= 0:
                mapped += 1
                if image[w] not in adj2[x]:
                    return False
        if mapped != sum(1 for y in adj2[x] if used[y]):
            return False
        for s in higher[u]:
            if all(image[w] >= 0 for w in s if w != u):
                if tuple(sorted(x if w == u else image[w] for w in s)) not in c2.simplices:
                    return False
        return True

    nodes = 0
    stack = [iter(candidates(order[0]))]
    while stack:
        u = order[len(stack) - 1]
        if image[u] >= 0:
            used[image[u]] = False
            image[u] = -1
        for x in stack[-1]:
            nodes += 1
            if nodes > budget:
                logger.warning(f"isomorphism search exceeded {budget} nodes")
                return OutOfBudget("isomorphism search nodes", budget, nodes)
            if consistent(u, x):
                image[u] = x
                used[x] = True
                break
        else:
            stack.pop()
            continue
        if len(stack) == n:
            return {c1.vertices[i]: c2.vertices[image[i]] for i in range(n)}
        stack.append(iter(candidates(order[len(stack)])))
    return None


# -- Delta-complexes and polygonal complexes --------------------------------

@dataclass(frozen=True)
class DeltaCell:
    """A k-cell: ordered vertex indices, and faces[i] is the face opposite vertices[i]."""
    name: str
    vertices: Tuple[int, ...]
    faces: Tuple[int, ...] = ()


class DeltaComplex:
    """
    A Delta-complex: cells glued along ordered faces, multiple edges allowed.

    ``cells[k]`` lists the k-cells; 0-cells name the vertices.
    """

    def __init__(self, cells: Sequence[Sequence[DeltaCell]]):
        self.cells: Tuple[Tuple[DeltaCell, ...], ...] = tuple(tuple(level) for level in cells)
        for k, level in enumerate(self.cells):
            for cell in level:
                if len(cell.vertices) != k + 1:
                    raise ComplexError(f"{k}-cell {cell.name} has {len(cell.vertices)} vertices")
                if k == 0:
                    continue
                if len(cell.faces) != k + 1:
                    raise ComplexError(f"{k}-cell {cell.name} has {len(cell.faces)} faces")
                for i, f in enumerate(cell.faces):
                    expected = cell.vertices[:i] + cell.vertices[i + 1:]
                    if self.cells[k - 1][f].vertices != expected:
                        raise ComplexError(f"face {i} of {cell.name} does not match its vertices")
        names = [cell.name for level in self.cells for cell in level]
        if len(set(names)) != len(names):
            raise ComplexError("cell names must be unique")

    @property
    def dimension(self) -> int:
        return len(self.cells) - 1

    @property
    def vertices(self) -> Tuple[str, ...]:
        return tuple(cell.name for cell in self.cells[0]) if self.cells else ()

    def f_vector(self) -> Tuple[int, ...]:
        return tuple(len(level) for level in self.cells)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def is_regular(self) -> bool:
        """Every cell has distinct vertices and distinct faces."""
        return all(len(set(cell.vertices)) == len(cell.vertices) and len(set(cell.faces)) == len(cell.faces)
                   for level in self.cells for cell in level)

    def to_simplicial(self) -> SimplicialComplex:
        if not self.is_regular():
            raise ComplexError("Delta-complex has a cell with repeated vertices or faces")
        for k, level in enumerate(self.cells):
            keys = [frozenset(cell.vertices) for cell in level]
            if len(set(keys)) != len(keys):
                raise ComplexError(f"two {k}-cells share a vertex set; not a simplicial complex")
        return SimplicialComplex.from_indices(self.vertices, (cell.vertices for level in self.cells for cell in level))


@dataclass(frozen=True)
class PolygonalComplex:
    """
    A 2-complex: vertices, edges (loops allowed) and faces given as cyclic
    words of directed edges ``(edge index, +1 or -1)``.
    """
    vertices: Tuple[str, ...]
    edges: Tuple[Tuple[str, str], ...]
    faces: Tuple[Tuple[Tuple[int, int], ...], ...]
    edge_names: Tuple[str, ...] = ()
    face_names: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "faces", tuple(tuple((int(e), int(s)) for e, s in f) for f in self.faces))
        if not self.edge_names:
            object.__setattr__(self, "edge_names", tuple(f"e{i}" for i in range(len(self.edges))))
        if not self.face_names:
            object.__setattr__(self, "face_names", tuple(f"F{i}" for i in range(len(self.faces))))
        if len(self.edge_names) != len(self.edges) or len(self.face_names) != len(self.faces):
            raise ComplexError("edge and face names must match the edge and face counts")
        known = set(self.vertices)
        if len(known) != len(self.vertices):
            raise ComplexError("duplicate vertex in polygonal complex")
        for name, (u, v) in zip(self.edge_names, self.edges):
            if u not in known or v not in known:
                raise ComplexError(f"edge {name} references an unknown vertex")
        for name, word in zip(self.face_names, self.faces):
            for e, s in word:
                if not 0 <= e < len(self.edges) or s not in (1, -1):
                    raise ComplexError(f"face {name} has malformed letter ({e}, {s})")
            for i, letter in enumerate(word):
                following = word[(i + 1) % len(word)]
                if self.directed_edge(*letter)[1] != self.directed_edge(*following)[0]:
                    raise ComplexError(f"face {name} is not a closed edge path at position {i}")

    def directed_edge(self, e: int, sign: int) -> Tuple[str, str]:
        u, v = self.edges[e]
        return (u, v) if sign > 0 else (v, u)

    def f_vector(self) -> Tuple[int, int, int]:
        return len(self.vertices), len(self.edges), len(self.faces)

    def euler_characteristic(self) -> int:
        v, e, f = self.f_vector()
        return v - e + f


def subdivide_polygonal(p: PolygonalComplex) -> DeltaComplex:
    """
    First barycentric subdivision of a polygonal complex.

    One new vertex per edge (``m:<edge>``) and per face (``c:<face>``); each
    edge splits into two halves and each n-gon into 2n triangles, one for
    each (side, endpoint) pair. A face may traverse an edge more than once;
    every traversal gets its own triangles. The result is a Delta-complex
    because a complex with loops subdivides into one with multiple edges.
    """
    vertex_cells = [DeltaCell(v, (i,)) for i, v in enumerate(p.vertices)]
    vindex = {v: i for i, v in enumerate(p.vertices)}
    midpoint = {}
    for e, name in enumerate(p.edge_names):
        midpoint[e] = len(vertex_cells)
        vertex_cells.append(DeltaCell(f"m:{name}", (len(vertex_cells),)))
    center = {}
    for f, name in enumerate(p.face_names):
        center[f] = len(vertex_cells)
        vertex_cells.append(DeltaCell(f"c:{name}", (len(vertex_cells),)))

    edge_cells: List[DeltaCell] = []

    def add_edge(name: str, a: int, b: int) -> int:
        edge_cells.append(DeltaCell(name, (a, b), (b, a)))
        return len(edge_cells) - 1

    halves = {}
    for e, (u, v) in enumerate(p.edges):
        halves[e, 0] = add_edge(f"{p.edge_names[e]}:0", vindex[u], midpoint[e])
        halves[e, 1] = add_edge(f"{p.edge_names[e]}:1", vindex[v], midpoint[e])

    triangles: List[DeltaCell] = []
    for f, word in enumerate(p.faces):
        fname, c = p.face_names[f], center[f]
        n = len(word)
        corner = [vindex[p.directed_edge(*letter)[0]] for letter in word]
        corner_spokes = [add_edge(f"{fname}/v{i}", corner[i], c) for i in range(n)]
        for i, (e, sign) in enumerate(word):
            m = midpoint[e]
            radius = add_edge(f"{fname}/m{i}", m, c)
            near_start, near_end = (halves[e, 0], halves[e, 1]) if sign > 0 else (halves[e, 1], halves[e, 0])
            triangles.append(DeltaCell(f"{fname}/t{i}a", (corner[i], m, c), (radius, corner_spokes[i], near_start)))
            j = (i + 1) % n
            triangles.append(DeltaCell(f"{fname}/t{i}b", (corner[j], m, c), (radius, corner_spokes[j], near_end)))

    levels = [vertex_cells, edge_cells]
    if triangles:
        levels.append(triangles)
    return DeltaComplex(levels)


def barycentric_subdivision(c: Union[SimplicialComplex, DeltaComplex]) -> SimplicialComplex:
    """
    Vertices are the simplices (cells) of ``c`` and simplices are chains
    under the face relation. Simplex vertices are named by ``simplex_name``;
    cells of a Delta-complex keep their cell names.
    """
    if isinstance(c, DeltaComplex):
        return _order_complex_of_cells(c)
    order = sorted(c.simplices, key=lambda s: (len(s), s))
    position = {s: i for i, s in enumerate(order)}
    chains = []
    for top in c.maximal_simplices():
        for ordering in itertools.permutations(top):
            chains.append([position[tuple(sorted(ordering[:k]))] for k in range(1, len(top) + 1)])
    names = [simplex_name(c.labels(s)) for s in order]
    return SimplicialComplex.from_indices(names, chains)


def _order_complex_of_cells(d: DeltaComplex) -> SimplicialComplex:
    if not d.is_regular():
        raise ComplexError("barycentric subdivision needs a regular Delta-complex")
    offsets = np.cumsum([0] + [len(level) for level in d.cells])
    names = [cell.name for level in d.cells for cell in level]
    is_face = set()
    for k in range(1, len(d.cells)):
        for cell in d.cells[k]:
            is_face.update((k - 1, f) for f in cell.faces)

    def chains_below(k: int, i: int) -> List[List[int]]:
        here = int(offsets[k]) + i
        if k == 0:
            return [[here]]
        return [chain + [here] for f in d.cells[k][i].faces for chain in chains_below(k - 1, f)]

    chains = []
    for k, level in enumerate(d.cells):
        for i in range(len(level)):
            if (k, i) not in is_face:
                chains.extend(chains_below(k, i))
    return SimplicialComplex.from_indices(names, chains)


# -- builders ----------------------------------------------------------------

def simplex(n: int, prefix: str = "") -> SimplicialComplex:
    """The full n-simplex on vertices ``1..n+1``."""
    vertices = [f"{prefix}{i}" for i in range(1, n + 2)]
    return SimplicialComplex(vertices, [vertices])


def boundary_of_simplex(n: int) -> SimplicialComplex:
    vertices = [str(i) for i in range(1, n + 2)]
    return SimplicialComplex(vertices, itertools.combinations(vertices, n))


def cycle(n: int) -> SimplicialComplex:
    vertices = [str(i) for i in range(1, n + 1)]
    return SimplicialComplex(vertices, [(vertices[i], vertices[(i + 1) % n]) for i in range(n)])


def path(n: int) -> SimplicialComplex:
    vertices = [str(i) for i in range(1, n + 1)]
    return SimplicialComplex(vertices, [(vertices[i], vertices[i + 1]) for i in range(n - 1)] or [vertices])


def flag_completion(graph: nx.Graph) -> SimplicialComplex:
    """The clique complex of a graph."""
    vertices = sorted((str(v) for v in graph.nodes), key=lambda v: (len(v), v))
    cliques = [[str(v) for v in clique] for clique in nx.find_cliques(graph)]
    return SimplicialComplex(vertices, cliques)


def octahedron() -> SimplicialComplex:
    """Boundary of the cross-polytope; opposite pairs are 1-2, 3-4, 5-6."""
    vertices = [str(i) for i in range(1, 7)]
    return SimplicialComplex(vertices, itertools.product(("1", "2"), ("3", "4"), ("5", "6")))


def join(c1: SimplicialComplex, c2: SimplicialComplex) -> SimplicialComplex:
    if set(c1.vertices) & set(c2.vertices):
        raise ComplexError("join needs disjoint vertex sets")
    tops = [c1.labels(a) + c2.labels(b) for a in c1.maximal_simplices() for b in c2.maximal_simplices()]
    return SimplicialComplex(c1.vertices + c2.vertices, tops or [c1.labels(s) for s in c1.simplices] + [c2.labels(s) for s in c2.simplices])


def rp2_6() -> SimplicialComplex:
    """The 6-vertex triangulation of the real projective plane."""
    triangles = ["123", "134", "145", "156", "162", "235", "346", "452", "563", "624"]
    return SimplicialComplex([str(i) for i in range(1, 7)], [list(t) for t in triangles])


def higman_polygonal() -> PolygonalComplex:
    """
    Presentation complex of the group with relations b^-1 a b = a^2 and its
    three cyclic shifts (a, b, c, d): one vertex, four loops, four pentagons.
    """
    letters = "abcd"
    faces = []
    for i in range(4):
        a, b = i, (i + 1) % 4
        faces.append(((b, -1), (a, 1), (b, 1), (a, -1), (a, -1)))
    return PolygonalComplex(("x",), (("x", "x"),) * 4, tuple(faces),
                            edge_names=tuple(letters), face_names=tuple(f"R{x}" for x in letters))


def higman_flag_complex() -> SimplicialComplex:
    return barycentric_subdivision(subdivide_polygonal(higman_polygonal()))


def random_complex(max_vertices: int, rng: np.random.Generator, max_dim: int = 3) -> SimplicialComplex:
    """A seeded random complex on at most ``max_vertices`` vertices."""
    n = int(rng.integers(1, max_vertices + 1))
    vertices = [str(i) for i in range(n)]
    tops = []
    for _ in range(int(rng.integers(1, 2 * n + 1))):
        size = int(rng.integers(1, min(n, max_dim + 1) + 1))
        tops.append([vertices[i] for i in rng.choice(n, size=size, replace=False)])
    return SimplicialComplex(vertices, tops)


def disjoint_union(c1: SimplicialComplex, c2: SimplicialComplex) -> SimplicialComplex:
    if set(c1.vertices) & set(c2.vertices):
        raise ComplexError("disjoint union needs disjoint vertex sets")
    return SimplicialComplex(c1.vertices + c2.vertices,
                             [c1.labels(s) for s in c1.simplices] + [c2.labels(s) for s in c2.simplices])


def cone(c: SimplicialComplex, apex: str = "apex") -> SimplicialComplex:
    if apex in c:
        raise ComplexError(f"cone apex {apex} is already a vertex")
    return SimplicialComplex(c.vertices + (apex,), [c.labels(s) + (apex,) for s in c.maximal_simplices()] or [[apex]])


def named_complexes() -> Dict[str, Callable[[], Union[SimplicialComplex, PolygonalComplex]]]:
    """Generators for the named complexes of the corpus."""
    return {
        "point": lambda: simplex(0),
        "edge": lambda: simplex(1),
        "single_edge": lambda: simplex(1),
        "path3": lambda: path(3),
        "square": lambda: cycle(4),
        "square_polygonal": cycle4_polygonal,
        "pentagon": lambda: cycle(5),
        "solid_triangle": lambda: simplex(2),
        "hollow_triangle": lambda: boundary_of_simplex(2),
        "octahedron": octahedron,
        "rp2_6": rp2_6,
        "rp2_barycentric": lambda: barycentric_subdivision(rp2_6()),
        "higman_polygonal": higman_polygonal,
        "higman_flag": higman_flag_complex,
    }


def cycle4_polygonal() -> PolygonalComplex:
    """A single square face on four vertices."""
    return PolygonalComplex(("1", "2", "3", "4"), (("1", "2"), ("2", "3"), ("3", "4"), ("4", "1")),
                            (((0, 1), (1, 1), (2, 1), (3, 1)),), face_names=("Q",))


def named_loops() -> Dict[str, Dict[str, List[List[str]]]]:
    """Named edge-loop families Gamma stored alongside corpus complexes."""
    higman = [["x", f"{a}:0", f"m:{a}", f"{a}:1"] for a in "abcd"]
    return {
        "square": {"boundary": [["1", "2", "3", "4"]]},
        "pentagon": {"boundary": [["1", "2", "3", "4", "5"]]},
        "hollow_triangle": {"boundary": [["1", "2", "3"]]},
        "higman_flag": {"one_cells": higman},
    }
