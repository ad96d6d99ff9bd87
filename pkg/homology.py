"""
Exact homology of simplicial, Delta-, polygonal and abstract chain
complexes through the Smith normal form.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import factorint

from complexes import DeltaComplex, PolygonalComplex, SimplicialComplex

logger = logging.getLogger(__name__)


class ChainComplexError(ValueError):
    """Boundary maps that do not compose to zero or do not fit together."""


class IntegerMatrix:
    """
    An exact integer matrix backed by a numpy object array, so entries are
    Python integers of arbitrary size.
    """

    def __init__(self, entries: Union[Sequence[Sequence[int]], np.ndarray] = None, rows: int = None, cols: int = None):
        if entries is None:
            arr = np.zeros((rows or 0, cols or 0), dtype=object)
        else:
            arr = np.array(entries, dtype=object)
            if arr.size == 0:
                arr = np.zeros(arr.shape if arr.ndim == 2 else (rows or 0, cols or 0), dtype=object)
            elif arr.dtype != object or any(type(x) is not int for x in arr.flat):
                arr = np.frompyfunc(int, 1, 1)(arr).astype(object)
        if arr.ndim != 2:
            raise ValueError("IntegerMatrix needs a 2-dimensional array")
        self.entries = arr

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows=rows, cols=cols)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m.entries[i, i] = 1
        return m

    def nonzero(self) -> Dict[Tuple[int, int], int]:
        return {(int(r), int(c)): int(self.entries[r, c]) for r, c in zip(*np.nonzero(self.entries))}

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def is_zero(self) -> bool:
        return not any(x != 0 for x in self.entries.flat)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return IntegerMatrix.zeros(self.rows, other.cols)
        return IntegerMatrix(self.entries.dot(other.entries))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and all(a == b for a, b in zip(self.entries.flat, other.entries.flat))

    def tolist(self) -> List[List[int]]:
        return [[int(x) for x in row] for row in self.entries]

    def __repr__(self) -> str:
        return f"IntegerMatrix({self.rows}x{self.cols})"


@dataclass
class SnfResult:
    """Invariant factors d1 | d2 | ... | dr; U·A·V = D when transforms were requested."""
    factors: List[int]
    rows: int
    cols: int
    left: Optional[IntegerMatrix] = None
    right: Optional[IntegerMatrix] = None

    @property
    def rank(self) -> int:
        return len(self.factors)

    def diagonal(self) -> IntegerMatrix:
        d = IntegerMatrix.zeros(self.rows, self.cols)
        for i, f in enumerate(self.factors):
            d.entries[i, i] = f
        return d


def _sparse(A: IntegerMatrix) -> Tuple[Dict[int, Dict[int, int]], Dict[int, set]]:
    rows: Dict[int, Dict[int, int]] = {}
    cols: Dict[int, set] = {}
    for (r, c), v in A.nonzero().items():
        rows.setdefault(r, {})[c] = v
        cols.setdefault(c, set()).add(r)
    return rows, cols


def _row_subtract(rows, cols, target: int, source: int, q: int) -> None:
    """row[target] -= q * row[source]"""
    row = rows.setdefault(target, {})
    for c, v in list(rows[source].items()):
        new = row.get(c, 0) - q * v
        if new:
            row[c] = new
            cols.setdefault(c, set()).add(target)
        elif c in row:
            del row[c]
            cols[c].discard(target)
    if not row:
        del rows[target]


def _col_subtract(rows, cols, target: int, source: int, q: int) -> None:
    """col[target] -= q * col[source]"""
    for r in list(cols.get(source, ())):
        row = rows[r]
        new = row.get(target, 0) - q * row[source]
        if new:
            row[target] = new
            cols.setdefault(target, set()).add(r)
        elif target in row:
            del row[target]
            cols[target].discard(r)
    if target in cols and not cols[target]:
        del cols[target]


def _choose_pivot(rows) -> Tuple[int, int]:
    best, best_key = None, None
    for r, row in rows.items():
        for c, v in row.items():
            key = (abs(v), len(row))
            if best_key is None or key < best_key:
                best, best_key = (r, c), key
                if key[0] == 1 and key[1] == 1:
                    return best
    return best


def smith_normal_form(A: IntegerMatrix, transforms: bool = False) -> SnfResult:
    """
    Smith normal form over the integers.

    The pivot is always the entry of smallest absolute value (preferring
    short rows), which keeps entry growth small on boundary matrices; the
    divisibility chain is restored by folding a non-divisible row into the
    pivot row before the pivot is retired.

    Parameters
    ----------
    A : IntegerMatrix
        Any integer matrix.
    transforms : bool, optional
        Also return unimodular ``left`` (U) and ``right`` (V) with U·A·V = D.
    """
    rows, cols = _sparse(A)
    U = IntegerMatrix.identity(A.rows).entries if transforms else None
    V = IntegerMatrix.identity(A.cols).entries if transforms else None
    pivots: List[Tuple[int, int, int]] = []

    while rows:
        r, c = _choose_pivot(rows)
        while True:
            p = rows[r][c]
            dirty = False
            for r2 in sorted(cols[c] - {r}):
                q = rows[r2][c] // p
                _row_subtract(rows, cols, r2, r, q)
                if transforms:
                    U[r2, :] -= q * U[r, :]
                if r2 in rows and c in rows[r2]:
                    dirty = True
            for c2 in sorted(set(rows[r]) - {c}):
                q = rows[r][c2] // p
                _col_subtract(rows, cols, c2, c, q)
                if transforms:
                    V[:, c2] -= q * V[:, c]
                if c2 in rows[r]:
                    dirty = True
            if dirty:
                # a remainder smaller than p is left in the pivot row or column
                candidates = [(abs(rows[r][x]), r, x) for x in rows[r]] + [(abs(rows[y][c]), y, c) for y in cols[c]]
                _, r, c = min(candidates)
                continue
            p = abs(p)
            offender = None
            if p != 1:
                for r2, row in rows.items():
                    if r2 != r and any(v % p for v in row.values()):
                        offender = r2
                        break
            if offender is None:
                break
            _row_subtract(rows, cols, r, offender, -1)
            if transforms:
                U[r, :] += U[offender, :]
        p = rows[r][c]
        if p < 0 and transforms:
            U[r, :] = -U[r, :]
        pivots.append((r, c, abs(p)))
        del rows[r]
        cols[c].discard(r)
        if not cols[c]:
            del cols[c]

    factors = [p for _, _, p in pivots]
    for a, b in zip(factors, factors[1:]):
        if b % a:
            raise RuntimeError(f"divisibility chain broken: {a} does not divide {b}")
    result = SnfResult(factors, A.rows, A.cols)
    if transforms:
        row_order = [r for r, _, _ in pivots] + [r for r in range(A.rows) if r not in {p[0] for p in pivots}]
        col_order = [c for _, c, _ in pivots] + [c for c in range(A.cols) if c not in {p[1] for p in pivots}]
        result.left = IntegerMatrix(U[row_order, :]) if A.rows else IntegerMatrix.zeros(0, 0)
        result.right = IntegerMatrix(V[:, col_order]) if A.cols else IntegerMatrix.zeros(0, 0)
    return result


def rank_mod_p(A: IntegerMatrix, p: int) -> int:
    """Rank over the field with p elements, by elimination on int64 arrays."""
    if A.rows == 0 or A.cols == 0:
        return 0
    M = np.array([[int(x) % p for x in row] for row in A.entries], dtype=np.int64)
    free = np.ones(M.shape[0], dtype=bool)
    rank = 0
    for c in range(M.shape[1]):
        hits = np.flatnonzero((M[:, c] != 0) & free)
        if not len(hits):
            continue
        r = hits[0]
        M[r] = (M[r] * pow(int(M[r, c]), -1, p)) % p
        others = hits[1:]
        if len(others):
            M[others] = (M[others] - np.outer(M[others, c], M[r])) % p
        free[r] = False
        rank += 1
    return rank


@dataclass(frozen=True)
class HomologyGroup:
    rank: int
    torsion: Tuple[int, ...] = ()

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = ["Z" if self.rank == 1 else f"Z^{self.rank}"] if self.rank else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


@dataclass
class HomologyProfile:
    """Homology groups from ``start_degree`` upwards with a coefficient ring tag (Z, Q or Fp)."""
    ring: str
    groups: List[HomologyGroup] = field(default_factory=list)
    start_degree: int = 0

    @property
    def reduced(self) -> bool:
        return self.start_degree == -1

    def degree(self, k: int) -> HomologyGroup:
        i = k - self.start_degree
        if 0 <= i < len(self.groups):
            return self.groups[i]
        return HomologyGroup(0)

    def ranks(self) -> Tuple[int, ...]:
        return tuple(g.rank for g in self.groups)

    def betti_numbers(self) -> Dict[int, int]:
        return {self.start_degree + i: g.rank for i, g in enumerate(self.groups)}

    def is_zero(self, up_to: int = None) -> bool:
        return all(g.is_zero() for i, g in enumerate(self.groups)
                   if up_to is None or self.start_degree + i <= up_to)

    def euler_characteristic(self) -> int:
        """Alternating rank sum, with the augmentation added back when reduced."""
        chi = sum((-1) ** (self.start_degree + i) * g.rank for i, g in enumerate(self.groups))
        return chi + 1 if self.reduced else chi

    def to_json(self) -> dict:
        return {"ring": self.ring, "reduced": self.reduced,
                "groups": [{"rank": g.rank, "torsion": list(g.torsion)} for g in self.groups]}

    @classmethod
    def from_json(cls, data: dict) -> "HomologyProfile":
        groups = [HomologyGroup(g["rank"], tuple(g.get("torsion", ()))) for g in data["groups"]]
        return cls(data["ring"], groups, -1 if data.get("reduced", True) else 0)

    def __str__(self) -> str:
        return ", ".join(f"H{self.start_degree + i}={g}" for i, g in enumerate(self.groups))


def parse_ring(ring: str, prime: int = None) -> Tuple[str, Optional[int]]:
    """Normalise a ring tag: ``Z``, ``Q``, ``F2``, ``F3``..., or ``Fp`` with ``prime``."""
    ring = ring.strip()
    if ring in ("Z", "Q"):
        return ring, None
    if ring.startswith("F"):
        p = int(ring[1:]) if ring[1:].isdigit() else prime
        if p is None or p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"ring {ring!r} needs a prime characteristic, got {p}")
        return f"F{p}", p
    raise ValueError(f"unknown coefficient ring: {ring!r}")


def elementary_divisors(torsion: Iterable[int]) -> List[int]:
    """Prime-power decomposition of a list of torsion coefficients."""
    return sorted(q ** e for t in torsion for q, e in factorint(t).items())


# -- boundary maps -----------------------------------------------------------

def boundary_matrices(c: Union[SimplicialComplex, DeltaComplex, PolygonalComplex],
                      augmented: bool = False) -> List[IntegerMatrix]:
    """
    Boundary maps ``mats[k]: C_k -> C_(k-1)`` for k = 0..dim.

    Simplices are oriented by sorted vertex order and listed as in
    ``faces(k)``. ``mats[0]`` is the augmentation (a row of ones) when
    ``augmented``, otherwise a map to the zero group.
    """
    if isinstance(c, SimplicialComplex):
        sizes = list(c.f_vector())
        mats = []
        for k in range(1, len(sizes)):
            position = {s: i for i, s in enumerate(c.faces(k - 1))}
            d = IntegerMatrix.zeros(sizes[k - 1], sizes[k])
            for j, s in enumerate(c.faces(k)):
                for i in range(len(s)):
                    d.entries[position[s[:i] + s[i + 1:]], j] += (-1) ** i
            mats.append(d)
    elif isinstance(c, DeltaComplex):
        sizes = list(c.f_vector())
        mats = []
        for k in range(1, len(sizes)):
            d = IntegerMatrix.zeros(sizes[k - 1], sizes[k])
            for j, cell in enumerate(c.cells[k]):
                for i, f in enumerate(cell.faces):
                    d.entries[f, j] += (-1) ** i
            mats.append(d)
    elif isinstance(c, PolygonalComplex):
        sizes = list(c.f_vector())
        vindex = {v: i for i, v in enumerate(c.vertices)}
        d1 = IntegerMatrix.zeros(sizes[0], sizes[1])
        for j, (u, v) in enumerate(c.edges):
            d1.entries[vindex[v], j] += 1
            d1.entries[vindex[u], j] -= 1
        d2 = IntegerMatrix.zeros(sizes[1], sizes[2])
        for j, word in enumerate(c.faces):
            for e, s in word:
                d2.entries[e, j] += s
        mats = [d1, d2]
    else:
        raise TypeError(f"no boundary maps for {type(c).__name__}")
    if augmented:
        d0 = IntegerMatrix.zeros(1, sizes[0] if sizes else 0)
        d0.entries[...] = 1
        d0 = IntegerMatrix(d0.entries)
    else:
        d0 = IntegerMatrix.zeros(0, sizes[0] if sizes else 0)
    return [d0] + mats


def composes_to_zero(first: IntegerMatrix, second: IntegerMatrix) -> bool:
    """Whether ``first @ second`` vanishes, computed on the nonzero entries only."""
    by_row: Dict[int, Dict[int, int]] = {}
    for (r, c), v in first.nonzero().items():
        by_row.setdefault(c, {})[r] = v
    product: Dict[Tuple[int, int], int] = {}
    for (k, j), v in second.nonzero().items():
        for i, u in by_row.get(k, {}).items():
            product[i, j] = product.get((i, j), 0) + u * v
    return not any(product.values())


def cellular_homology(boundaries: Sequence[IntegerMatrix], ring: str = "Z", start_degree: int = 0,
                      prime: int = None) -> HomologyProfile:
    """
    Homology of a finite free chain complex.

    Parameters
    ----------
    boundaries : sequence of IntegerMatrix
        ``boundaries[i]`` is the map from degree ``start_degree + i + 1`` to
        degree ``start_degree + i``.
    ring : str
        ``Z``, ``Q`` or ``Fp`` (``F2``, ``F3``, ... or ``Fp`` with ``prime``).

    Raises
    ------
    ChainComplexError
        If consecutive maps do not fit or do not compose to zero.
    """
    ring, p = parse_ring(ring, prime)
    if not boundaries:
        raise ChainComplexError("at least one boundary map is needed to fix the chain groups")
    sizes = [boundaries[0].rows] + [d.cols for d in boundaries]
    for i in range(1, len(boundaries)):
        if boundaries[i - 1].cols != boundaries[i].rows:
            raise ChainComplexError(f"boundary maps into degree {start_degree + i} do not fit together")
        if not composes_to_zero(boundaries[i - 1], boundaries[i]):
            raise ChainComplexError(f"boundary squares to a nonzero map at degree {start_degree + i + 1}")

    snf = [smith_normal_form(d) for d in boundaries] if ring == "Z" else None
    if ring == "Z":
        ranks = [s.rank for s in snf]
    elif ring == "Q":
        ranks = [smith_normal_form(d).rank for d in boundaries]
    else:
        ranks = [rank_mod_p(d, p) for d in boundaries]

    groups = []
    for k, n in enumerate(sizes):
        outgoing = ranks[k - 1] if k > 0 else 0
        incoming = ranks[k] if k < len(ranks) else 0
        torsion = tuple(f for f in snf[k].factors if f > 1) if ring == "Z" and k < len(snf) else ()
        groups.append(HomologyGroup(n - outgoing - incoming, torsion))
    return HomologyProfile(ring, groups, start_degree)


def reduced_homology(c: Union[SimplicialComplex, DeltaComplex, PolygonalComplex], ring: str = "Z",
                     prime: int = None, reduced: bool = True) -> HomologyProfile:
    """Reduced homology by default (degree -1 first); ``reduced=False`` drops the augmentation."""
    mats = boundary_matrices(c, augmented=reduced)
    if reduced:
        profile = cellular_homology(mats, ring, start_degree=-1, prime=prime)
    elif len(mats) > 1:
        profile = cellular_homology(mats[1:], ring, start_degree=0, prime=prime)
    else:
        profile = cellular_homology(mats, ring, start_degree=-1, prime=prime)
        profile = HomologyProfile(profile.ring, profile.groups[1:], 0)
    logger.info(f"homology over {profile.ring}: {profile}")
    return profile


def is_R_acyclic(c: SimplicialComplex, ring: str = "Z", prime: int = None) -> bool:
    return reduced_homology(c, ring, prime).is_zero()


def is_n_R_acyclic(c: SimplicialComplex, ring: str, n: int, prime: int = None) -> bool:
    return reduced_homology(c, ring, prime).is_zero(up_to=n)


def universal_coefficient_ranks(profile: HomologyProfile, p: int) -> Tuple[int, ...]:
    """Mod-p Betti numbers predicted from integral homology."""
    if profile.ring != "Z":
        raise ValueError("universal coefficients need integral homology")

    def p_torsion(g: HomologyGroup) -> int:
        return sum(1 for t in g.torsion if t % p == 0)

    return tuple(g.rank + p_torsion(g) + (p_torsion(profile.groups[i - 1]) if i > 0 else 0)
                 for i, g in enumerate(profile.groups))


def profiles_agree(a: HomologyProfile, b: HomologyProfile) -> bool:
    """Equal groups in every degree, padding the shorter profile with zeros."""
    if a.ring != b.ring:
        return False
    low = min(a.start_degree, b.start_degree)
    high = max(a.start_degree + len(a.groups), b.start_degree + len(b.groups))
    return all(a.degree(k) == b.degree(k) for k in range(low, high))
