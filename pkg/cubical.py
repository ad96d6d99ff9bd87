"""
The Salvetti complex of a flag complex L as a quotient cube complex with
one vertex, its vertex link, the ascending and descending links of the
height function, and the level-set 2-complex of the Bestvina-Brady group.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, List, Tuple, Union

from complexes import ComplexError, PolygonalComplex, Simplex, SimplicialComplex, full_subcomplex, is_flag, simplex_name
from constructions import signed, sphere_link
from homology import HomologyGroup, HomologyProfile, IntegerMatrix, cellular_homology, reduced_homology
from presentations import Presentation, bb_presentation, edge_alphabet, raag_presentation, triangle_relators

logger = logging.getLogger(__name__)

BOTTOM, TOP = "bottom", "top"


class CubeQuotientComplex:
    """
    One cube per simplex of L and one vertex for the empty simplex. The
    cube of s has dimension |s|; deleting the i-th vertex v of s gives the
    opposite facets at v = 0 (bottom) and v = 1 (top), both identified
    with the cube of s minus v.
    """

    def __init__(self, L: SimplicialComplex):
        self.L = L
        self._cells: List[List[Simplex]] = [[()]] + [L.faces(k) for k in range(L.dimension + 1)]

    @property
    def dimension(self) -> int:
        return len(self._cells) - 1

    def cells(self, k: int) -> List[Simplex]:
        return self._cells[k] if 0 <= k < len(self._cells) else []

    def f_vector(self) -> Tuple[int, ...]:
        return tuple(len(c) for c in self._cells)

    def facets(self, cell: Simplex) -> List[Tuple[Simplex, str, int]]:
        out = []
        for i in range(len(cell)):
            face = cell[:i] + cell[i + 1:]
            out.append((face, BOTTOM, (-1) ** i))
            out.append((face, TOP, (-1) ** i))
        return out

    def morse_span(self, cell: Simplex) -> int:
        """Height difference between the top and bottom corners of the cube."""
        return len(cell)

    def corners(self, cell: Simplex) -> Iterator[Tuple[int, ...]]:
        return itertools.product((0, 1), repeat=len(cell))

    def boundary_matrices(self) -> List[IntegerMatrix]:
        """``mats[k - 1]`` is the cellular boundary from k-cubes to (k-1)-cubes; top minus bottom facet."""
        mats = []
        for k in range(1, self.dimension + 1):
            position = {s: i for i, s in enumerate(self.cells(k - 1))}
            d = IntegerMatrix.zeros(len(self.cells(k - 1)), len(self.cells(k)))
            for j, cell in enumerate(self.cells(k)):
                for face, side, sign in self.facets(cell):
                    d.entries[position[face], j] += sign if side == TOP else -sign
            mats.append(d)
        return mats

    def to_json(self) -> dict:
        cells = []
        for k in range(self.dimension + 1):
            for cell in self.cells(k):
                cells.append({
                    "dimension": k,
                    "simplex": list(self.L.labels(cell)),
                    "facets": [{"face": list(self.L.labels(f)), "side": side, "sign": sign}
                               for f, side, sign in self.facets(cell)],
                })
        return {"complex": list(self.L.vertices), "cells": cells}


def salvetti(L: SimplicialComplex) -> CubeQuotientComplex:
    if not is_flag(L):
        raise ComplexError("the Salvetti complex is built for flag complexes")
    t = CubeQuotientComplex(L)
    logger.info(f"Salvetti complex: cells per dimension {t.f_vector()}")
    return t


def salvetti_homology(L: Union[SimplicialComplex, CubeQuotientComplex]) -> HomologyProfile:
    """
    Cellular homology of the Salvetti complex of a flag complex L (or of an
    already built Salvetti complex). Opposite facets are identified, so
    every boundary map vanishes and H_k is free of rank the number of
    (k-1)-simplices.

    Raises
    ------
    ComplexError
        If L is not flag.
    RuntimeError
        If some boundary map is nonzero.
    """
    t = salvetti(L) if isinstance(L, SimplicialComplex) else L
    mats = t.boundary_matrices()
    if not mats:
        return HomologyProfile("Z", [HomologyGroup(1)], 0)
    for k, d in enumerate(mats, start=1):
        if not d.is_zero():
            raise RuntimeError(f"Salvetti boundary map in degree {k} does not vanish")
    return cellular_homology(mats, "Z", start_degree=0)


def salvetti_presentation(t: CubeQuotientComplex) -> Presentation:
    """The fundamental group read off the 2-skeleton: the right-angled Artin group."""
    return raag_presentation(t.L)


def vertex_link(t: CubeQuotientComplex) -> SimplicialComplex:
    """
    Link of the single vertex: the corner c of the cube of s contributes
    the simplex of v+ (c_v = 0, the edge leaves upwards) or v− (c_v = 1).
    """
    L = t.L
    vertices = [signed(v, s) for v in L.vertices for s in (1, -1)]
    tops = []
    for k in range(1, t.dimension + 1):
        for cell in t.cells(k):
            for corner in t.corners(cell):
                tops.append([signed(L.vertices[x], -1 if c else 1) for x, c in zip(cell, corner)])
    lk = SimplicialComplex(vertices, tops)
    if lk != sphere_link(L):
        raise RuntimeError("vertex link differs from the sphere-link complex")
    return lk


def _directional_link(t: CubeQuotientComplex, sign: int) -> SimplicialComplex:
    lk = vertex_link(t)
    sub = full_subcomplex(lk, [signed(v, sign) for v in t.L.vertices])
    if sub.relabel({signed(v, sign): v for v in t.L.vertices}) != t.L:
        raise RuntimeError("directional link is not a copy of L")
    return sub


def ascending_link(t: CubeQuotientComplex) -> SimplicialComplex:
    """Corners where a cube attains its minimum height: spanned by the v+."""
    return _directional_link(t, 1)


def descending_link(t: CubeQuotientComplex) -> SimplicialComplex:
    """Corners where a cube attains its maximum height: spanned by the v−."""
    return _directional_link(t, -1)


@dataclass
class LevelSetComplex:
    complex: PolygonalComplex
    homology: HomologyProfile
    presentation: Presentation


def level_set_complex(L: SimplicialComplex) -> LevelSetComplex:
    """
    The level set of height 0 modulo the Bestvina-Brady group, for
    dim L <= 2: one vertex, an edge per edge of L and two triangles per
    triangle xyz of L, attached along abc and a^-1 b^-1 c^-1 where a, b, c
    are the edges xy, yz, zx. Its fundamental group is presented by
    P_L(empty, {0}).

    Raises
    ------
    ComplexError
        If dim L > 2.
    """
    if L.dimension > 2:
        raise ComplexError("the level-set model covers complexes of dimension at most 2")
    alphabet = edge_alphabet(L)
    relators = triangle_relators(L, alphabet)
    faces = [tuple((abs(x) - 1, 1 if x > 0 else -1) for x in r) for r in relators]
    face_names: List[str] = []
    for t in L.faces(2):
        name = simplex_name(L.labels(t))
        face_names += [f"{name}+", f"{name}-"]
    pc = PolygonalComplex(("*",), (("*", "*"),) * len(alphabet.names), tuple(faces),
                          edge_names=alphabet.names, face_names=tuple(face_names))
    profile = reduced_homology(pc, reduced=False)
    presentation = bb_presentation(L, [], {0})
    logger.info(f"level-set complex: f-vector {pc.f_vector()}, homology {profile}")
    return LevelSetComplex(pc, profile, presentation)
