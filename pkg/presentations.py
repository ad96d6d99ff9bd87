"""
Finite group presentations: free reduction, the edge-path group of a
simplicial complex, the presentations P_L(Gamma, S), the presentation of
the semidirect product BB(cover) x| deck group, abelianization and
presentation 2-complexes.

Words are tuples of signed 1-based generator indices: ``k`` is generator
``k`` and ``-k`` its inverse.
"""
import functools
import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx
from sympy.combinatorics.free_groups import FreeGroup, FreeGroupElement, free_group

from complexes import OutOfBudget, PolygonalComplex, SimplicialComplex, is_connected, is_flag
from homology import (HomologyGroup, HomologyProfile, IntegerMatrix, reduced_homology,
                      smith_normal_form)
from permutations import perm_compose, perm_id

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]

LETTERS = "abcdefghijklmnopqrstuvwxyz"


class PresentationError(ValueError):
    """Malformed presentation, invalid loop or an unmet precondition."""


# -- words -------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def free_group_of_rank(rank: int) -> Tuple[FreeGroup, Tuple[FreeGroupElement, ...]]:
    """The sympy free group on ``x1 ... x<rank>`` and its generators."""
    F, *gens = free_group(" ".join(f"x{k}" for k in range(1, rank + 1)))
    return F, tuple(gens)


def to_free_element(word: Iterable[int], rank: int = None) -> FreeGroupElement:
    """The element of the free group of ``rank`` (default: the largest letter) spelled by ``word``."""
    word = tuple(word)
    if rank is None:
        rank = max((abs(x) for x in word), default=0)
    F, gens = free_group_of_rank(rank)
    element = F.identity
    for k, run in itertools.groupby(word, key=abs):
        exponent = sum(1 if x > 0 else -1 for x in run)
        if exponent:
            element = element * gens[k - 1] ** exponent
    return element


def from_free_element(element: FreeGroupElement) -> Word:
    symbols = element.group.symbols
    out: List[int] = []
    for symbol, exponent in element.array_form:
        k = symbols.index(symbol) + 1
        out.extend([k if exponent > 0 else -k] * abs(exponent))
    return tuple(out)


@functools.lru_cache(maxsize=1 << 16)
def _reduced(word: Word) -> Word:
    return from_free_element(to_free_element(word))


def free_reduce(word: Iterable[int]) -> Word:
    return _reduced(tuple(word))


def invert_word(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def cyclic_reduce(word: Sequence[int]) -> Word:
    return from_free_element(to_free_element(word).cyclic_reduction())


def cyclic_conjugates(word: Sequence[int]) -> List[Word]:
    w = cyclic_reduce(word)
    return [w[i:] + w[:i] for i in range(len(w))] or [()]


def word_power(word: Sequence[int], n: int) -> Word:
    base = tuple(word) if n >= 0 else invert_word(word)
    return free_reduce(base * abs(n))


def long_relator(loop_word: Sequence[int], n: int) -> Word:
    """``a1^n a2^n ... al^n`` for a loop word ``a1 ... al``."""
    return free_reduce(itertools.chain.from_iterable(word_power((x,), n) for x in loop_word))


def substitute(word: Sequence[int], images: Sequence[Sequence[int]]) -> Word:
    """Image of ``word`` under the map sending generator ``k`` to ``images[k - 1]``."""
    out: List[int] = []
    for x in word:
        out.extend(images[x - 1] if x > 0 else invert_word(images[-x - 1]))
    return free_reduce(out)


def exponent_sums(word: Sequence[int], rank: int) -> List[int]:
    sums = [0] * rank
    for x in word:
        sums[abs(x) - 1] += 1 if x > 0 else -1
    return sums


# -- presentations -----------------------------------------------------------

@dataclass(frozen=True)
class Presentation:
    """Generators by name and relators as freely reduced words."""
    generators: Tuple[str, ...]
    relators: Tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(str(g) for g in self.generators))
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError(f"duplicate generator names in {list(self.generators)}")
        n = len(self.generators)
        reduced = []
        for r in self.relators:
            r = tuple(int(x) for x in r)
            bad = [x for x in r if x == 0 or abs(x) > n]
            if bad:
                raise PresentationError(f"relator {list(r)} references unknown generators {bad}")
            reduced.append(free_reduce(r))
        object.__setattr__(self, "relators", tuple(reduced))

    @property
    def rank(self) -> int:
        return len(self.generators)

    def generator_index(self, name: str) -> int:
        try:
            return self.generators.index(name) + 1
        except ValueError:
            raise PresentationError(f"unknown generator: {name}") from None

    def with_relators(self, extra: Iterable[Sequence[int]]) -> "Presentation":
        return Presentation(self.generators, self.relators + tuple(tuple(w) for w in extra))

    def word_to_string(self, word: Sequence[int]) -> str:
        if not word:
            return "1"
        parts = []
        for x, run in itertools.groupby(word):
            k = len(list(run))
            name = self.generators[abs(x) - 1]
            power = k if x > 0 else -k
            parts.append(name if power == 1 else f"{name}^{power}")
        return " ".join(parts)

    def parse_word(self, text: str) -> Word:
        """
        Parse ``"a b^-1 c^3"``; tokens are separated by spaces, ``*`` or
        ``,``. When every generator name is a single character, juxtaposed
        letters (``"abAB"``) also work, with upper case for inverses.
        """
        text = text.strip()
        if text in ("", "1"):
            return ()
        tokens = text.replace("*", " ").replace(",", " ").split()
        single = all(len(g) == 1 for g in self.generators)
        word: List[int] = []
        for token in tokens:
            name, _, power = token.partition("^")
            try:
                k = int(power) if power else 1
            except ValueError:
                raise PresentationError(f"bad exponent in {token!r}") from None
            if name in self.generators:
                word.extend(word_power((self.generator_index(name),), k))
            elif single and not power:
                for ch in name:
                    if ch in self.generators:
                        word.append(self.generator_index(ch))
                    elif ch.lower() in self.generators and ch.isupper():
                        word.append(-self.generator_index(ch.lower()))
                    else:
                        raise PresentationError(f"unknown generator {ch!r} in {text!r}")
            else:
                raise PresentationError(f"unknown generator {name!r} in {text!r}")
        return free_reduce(word)

    def __str__(self) -> str:
        rels = ", ".join(self.word_to_string(r) for r in self.relators)
        return f"< {', '.join(self.generators)} | {rels} >"


@dataclass(frozen=True)
class HeightSet:
    """A finite set S of integers."""
    values: FrozenSet[int] = frozenset({0})

    def __post_init__(self):
        object.__setattr__(self, "values", frozenset(int(v) for v in self.values))

    @classmethod
    def parse(cls, text: str) -> "HeightSet":
        try:
            return cls(frozenset(int(x) for x in text.replace(" ", "").split(",") if x))
        except ValueError:
            raise PresentationError(f"heights must be comma-separated integers, got {text!r}") from None

    @property
    def contains_zero(self) -> bool:
        return 0 in self.values

    def nonzero(self) -> List[int]:
        return sorted(v for v in self.values if v != 0)

    def translate(self, k: int) -> "HeightSet":
        return HeightSet(frozenset(v + k for v in self.values))

    def normalized(self) -> "HeightSet":
        """Translate so that 0 is the least element; G_L(S) depends on S only up to translation."""
        if not self.values:
            return self
        return self.translate(-min(self.values))

    def truncate(self, m: int) -> "HeightSet":
        return HeightSet(frozenset(v for v in self.values if -m <= v <= m))

    def __iter__(self):
        return iter(sorted(self.values))

    def __len__(self) -> int:
        return len(self.values)


def simplify(p: Presentation) -> Presentation:
    """
    Deterministic cleanup: cyclically reduce relators, drop empty and
    repeated relators (up to rotation and inversion), and eliminate any
    generator occurring in a relator of length 1 or in a length-2 relator
    with a second, distinct generator. Iterated to a fixed point.
    """
    generators = list(p.generators)
    relators = [cyclic_reduce(r) for r in p.relators]
    while True:
        seen, kept = set(), []
        for r in relators:
            if not r:
                continue
            key = min(cyclic_conjugates(r) + cyclic_conjugates(invert_word(r)))
            if key not in seen:
                seen.add(key)
                kept.append(r)
        relators = kept

        target: Optional[Tuple[int, Word]] = None
        for r in relators:
            if len(r) == 1:
                target = (abs(r[0]), ())
                break
            if len(r) == 2 and abs(r[0]) != abs(r[1]):
                x, y = r
                # x y = 1, so y = x^-1
                target = (abs(y), (-x,) if y > 0 else (x,))
                break
        if target is None:
            break
        g, value = target
        images = [(i,) if i < g else (i - 1,) for i in range(1, len(generators) + 1)]
        images[g - 1] = tuple((abs(v) - (abs(v) > g)) * (1 if v > 0 else -1) for v in value)
        relators = [cyclic_reduce(substitute(r, images)) for r in relators]
        logger.debug(f"eliminated generator {generators[g - 1]}")
        del generators[g - 1]
    return Presentation(tuple(generators), tuple(relators))


def abelianization(p: Presentation) -> HomologyGroup:
    """Free rank and torsion of the abelianized group, via the relator exponent matrix."""
    matrix = IntegerMatrix([exponent_sums(r, p.rank) for r in p.relators], rows=len(p.relators), cols=p.rank)
    snf = smith_normal_form(matrix)
    return HomologyGroup(p.rank - snf.rank, tuple(f for f in snf.factors if f > 1))


def presentation_2complex(p: Presentation) -> Tuple[PolygonalComplex, HomologyProfile]:
    """One vertex, a loop per generator and a face per relator; homology is reduced."""
    faces = [tuple((abs(x) - 1, 1 if x > 0 else -1) for x in r) for r in p.relators]
    pc = PolygonalComplex(("*",), (("*", "*"),) * p.rank, tuple(faces),
                          edge_names=p.generators, face_names=tuple(f"r{i + 1}" for i in range(len(faces))))
    return pc, reduced_homology(pc)


def is_consequence_shape(word: Sequence[int], targets: Sequence[Sequence[int]]) -> bool:
    """Whether ``word`` is trivial or a cyclic conjugate of a target relator or its inverse."""
    w = cyclic_reduce(word)
    if not w:
        return True
    for t in targets:
        if len(cyclic_reduce(t)) == len(w) and (w in cyclic_conjugates(t) or w in cyclic_conjugates(invert_word(t))):
            return True
    return False


def maps_relators_to_consequences(source: Presentation, target: Presentation,
                                  images: Sequence[Sequence[int]]) -> List[int]:
    """Indices of source relators whose image is neither trivial nor a conjugate of a target relator^(+-1)."""
    if len(images) != source.rank:
        raise PresentationError(f"need {source.rank} generator images, got {len(images)}")
    return [i for i, r in enumerate(source.relators) if not is_consequence_shape(substitute(r, images), target.relators)]


# -- complexes to presentations ----------------------------------------------

def _loop_vertices(c: SimplicialComplex, loop: Sequence[str]) -> List[str]:
    """A closed vertex loop without its repeated end point."""
    loop = [str(v) for v in loop]
    if len(loop) > 1 and loop[0] == loop[-1]:
        loop = loop[:-1]
    for v in loop:
        if v not in c:
            raise PresentationError(f"loop vertex {v} is not in the complex")
    if len(loop) < 2:
        return loop
    for x, y in zip(loop, loop[1:] + loop[:1]):
        if x == y or not c.has_simplex((x, y)):
            raise PresentationError(f"loop step {x}->{y} is not an edge")
    return loop


def edge_path_presentation(c: SimplicialComplex, base: str = None) -> Presentation:
    """
    Generators are the edges ``x>y`` (sorted vertex order; the reverse
    direction is the inverse); spanning-tree edges of a breadth-first tree
    from ``base`` are relators, and so is (x,y)(y,z)(z,x) for every triangle.
    """
    if not is_connected(c):
        raise PresentationError("edge-path group needs a connected complex")
    base = c.vertices[0] if base is None else base
    edges = c.faces(1)
    position = {e: i + 1 for i, e in enumerate(edges)}
    names = [f"{c.vertices[i]}>{c.vertices[j]}" for i, j in edges]
    tree = nx.bfs_tree(c.graph(), c.index(base))
    relators = [(position[tuple(sorted(e))],) for e in sorted(tree.edges)]
    for i, j, k in c.faces(2):
        relators.append((position[i, j], position[j, k], -position[i, k]))
    logger.info(f"edge-path presentation: {len(names)} generators, {len(relators)} relators")
    return Presentation(tuple(names), tuple(relators))


def edge_path_loop_word(c: SimplicialComplex, loop: Sequence[str]) -> Word:
    """Word of a closed vertex loop in the generators of ``edge_path_presentation``."""
    loop = _loop_vertices(c, loop)
    position = {e: i + 1 for i, e in enumerate(c.faces(1))}
    word = []
    for x, y in zip(loop, loop[1:] + loop[:1]):
        if x == y:
            continue
        i, j = c.index(x), c.index(y)
        word.append(position[i, j] if i < j else -position[j, i])
    return tuple(word)


@dataclass(frozen=True)
class EdgeAlphabet:
    """One oriented generator per edge of L, in the order they are named."""
    names: Tuple[str, ...]
    edges: Tuple[Tuple[str, str], ...]
    lookup: Dict[Tuple[str, str], int] = field(default_factory=dict, compare=False)

    def letter(self, x: str, y: str) -> int:
        try:
            return self.lookup[x, y]
        except KeyError:
            raise PresentationError(f"{x}->{y} is not an edge") from None

    def path_word(self, loop: Sequence[str]) -> Word:
        if len(loop) < 2:
            return ()
        return tuple(self.letter(x, y) for x, y in zip(loop, list(loop[1:]) + list(loop[:1])))


def generator_names(n: int) -> Tuple[str, ...]:
    return tuple(LETTERS[:n]) if n <= len(LETTERS) else tuple(f"e{i + 1}" for i in range(n))


def edge_alphabet(L: SimplicialComplex, loops: Sequence[Sequence[str]] = ()) -> EdgeAlphabet:
    """
    Edges met along the loops come first, oriented as first traversed;
    the remaining edges follow in sorted order, oriented low to high.
    """
    oriented: List[Tuple[str, str]] = []
    seen = set()
    for loop in loops:
        loop = _loop_vertices(L, loop)
        if len(loop) < 2:
            continue
        for x, y in zip(loop, loop[1:] + loop[:1]):
            if frozenset((x, y)) not in seen:
                seen.add(frozenset((x, y)))
                oriented.append((x, y))
    for i, j in L.faces(1):
        x, y = L.vertices[i], L.vertices[j]
        if frozenset((x, y)) not in seen:
            seen.add(frozenset((x, y)))
            oriented.append((x, y))
    lookup = {}
    for k, (x, y) in enumerate(oriented, start=1):
        lookup[x, y] = k
        lookup[y, x] = -k
    return EdgeAlphabet(generator_names(len(oriented)), tuple(oriented), lookup)


def triangle_relators(L: SimplicialComplex, alphabet: EdgeAlphabet) -> List[Word]:
    """abc and a^-1 b^-1 c^-1 for the cycle x->y->z->x of each triangle, x < y < z."""
    relators = []
    for t in L.faces(2):
        x, y, z = L.labels(t)
        word = (alphabet.letter(x, y), alphabet.letter(y, z), alphabet.letter(z, x))
        relators.append(word)
        relators.append(tuple(-a for a in word))
    return relators


def bb_presentation(L: SimplicialComplex, loops: Sequence[Sequence[str]], heights: Union[HeightSet, Iterable[int]]) -> Presentation:
    """
    The presentation P_L(Gamma, S).

    One generator per edge of L (the reverse edge is its inverse), two
    relators per triangle, and a long relator a1^n ... al^n for each loop
    and each nonzero n in S.

    Raises
    ------
    PresentationError
        If 0 is not in S, L is disconnected or not flag, or a loop is not
        an edge loop of L.
    """
    heights = heights if isinstance(heights, HeightSet) else HeightSet(frozenset(heights))
    if not heights.contains_zero:
        raise PresentationError(f"height set {sorted(heights.values)} must contain 0")
    if not is_connected(L):
        raise PresentationError("L must be connected")
    if not is_flag(L):
        raise PresentationError("L must be a flag complex")
    alphabet = edge_alphabet(L, loops)
    relators = triangle_relators(L, alphabet)
    loop_words = [alphabet.path_word(_loop_vertices(L, loop)) for loop in loops]
    for n in heights.nonzero():
        for w in loop_words:
            relators.append(long_relator(w, n))
    logger.info(f"P_L(Gamma, S): {len(alphabet.names)} generators, {len(relators)} relators, S={sorted(heights.values)}")
    return Presentation(alphabet.names, tuple(relators))


def presentation_inclusion(smaller: Presentation, larger: Presentation) -> Dict[str, str]:
    """
    The identity on generators, checked to carry every relator of
    ``smaller`` to a relator of ``larger``; it induces the surjection
    G_L(S) -> G_L(T) for S a subset of T.
    """
    if smaller.generators != larger.generators:
        raise PresentationError("presentations have different generators")
    present = set(larger.relators)
    missing = [r for r in smaller.relators if r not in present]
    if missing:
        raise PresentationError(f"{len(missing)} relators are missing from the larger presentation")
    return {g: g for g in smaller.generators}


def raag_presentation(L: SimplicialComplex) -> Presentation:
    """The right-angled Artin group: vertex generators, commuting along edges."""
    relators = [(i + 1, j + 1, -(i + 1), -(j + 1)) for i, j in L.faces(1)]
    return Presentation(L.vertices, tuple(relators))


def bb_to_raag_images(L: SimplicialComplex, alphabet: EdgeAlphabet) -> List[Word]:
    """Edge generator (x, y) maps to x^-1 y in the Artin group."""
    return [(-(L.index(x) + 1), L.index(y) + 1) for x, y in alphabet.edges]


def height_character(L: SimplicialComplex, alphabet: EdgeAlphabet) -> Dict[str, int]:
    """Each edge generator's image under A_L -> Z (every vertex to 1); all zero."""
    return {name: sum(1 if x > 0 else -1 for x in w)
            for name, w in zip(alphabet.names, bb_to_raag_images(L, alphabet))}


class RaagWordProblem:
    """
    Normal forms in a right-angled Artin group by piling: one pile per
    generator, and a letter also drops a spacer on the piles of the
    generators it does not commute with.
    """

    def __init__(self, rank: int, commuting: Iterable[Tuple[int, int]]):
        self.rank = rank
        pairs = {(a, b) for a, b in commuting} | {(b, a) for a, b in commuting}
        self.blockers = {i: [j for j in range(1, rank + 1) if j != i and (i, j) not in pairs] for i in range(1, rank + 1)}

    @classmethod
    def for_complex(cls, L: SimplicialComplex) -> "RaagWordProblem":
        return cls(len(L.vertices), [(i + 1, j + 1) for i, j in L.faces(1)])

    def normal_form(self, word: Sequence[int]) -> Word:
        piles: Dict[int, List[int]] = {i: [] for i in range(1, self.rank + 1)}
        size = 0
        for x in word:
            i, eps = abs(x), (1 if x > 0 else -1)
            if piles[i] and piles[i][-1] == -eps:
                size -= 1
                piles[i].pop()
                for j in self.blockers[i]:
                    piles[j].pop()
            else:
                size += 1
                piles[i].append(eps)
                for j in self.blockers[i]:
                    piles[j].append(0)
        heads = {i: 0 for i in piles}
        out: List[int] = []
        while len(out) < size:
            for i in range(1, self.rank + 1):
                if heads[i] < len(piles[i]) and piles[i][heads[i]]:
                    out.append(i * piles[i][heads[i]])
                    heads[i] += 1
                    for j in self.blockers[i]:
                        heads[j] += 1
                    break
        return tuple(out)

    def is_trivial(self, word: Sequence[int]) -> bool:
        return not self.normal_form(word)


def raag_image_failures(L: SimplicialComplex, p: Presentation, alphabet: EdgeAlphabet) -> List[int]:
    """Indices of relators of ``p`` that do not vanish in the Artin group of L."""
    images = bb_to_raag_images(L, alphabet)
    solver = RaagWordProblem.for_complex(L)
    return [i for i, r in enumerate(p.relators) if not solver.is_trivial(substitute(r, images))]


# -- validating Gamma ---------------------------------------------------------

def validate_gamma(L: SimplicialComplex, loops: Sequence[Sequence[str]], max_cosets: int = 10000):
    """
    Certify that the loops normally generate the fundamental group: the
    edge-path group modulo the loop words must enumerate to one coset.

    Returns ``Certified`` or ``Inconclusive`` (never a negative answer).
    """
    from enumeration import Certified, Inconclusive, todd_coxeter

    if not is_connected(L):
        raise PresentationError("L must be connected")
    p = edge_path_presentation(L)
    words = [edge_path_loop_word(L, loop) for loop in loops]
    q = simplify(p.with_relators(words))
    table = todd_coxeter(q, [], max_cosets)
    if isinstance(table, OutOfBudget):
        logger.warning(f"Gamma not certified: enumeration stopped at {table.used} cosets")
        return Inconclusive(f"coset enumeration exceeded {table.limit} cosets")
    if table.index != 1:
        logger.warning(f"Gamma not certified: the quotient has order {table.index}")
        return Inconclusive(f"quotient by the loops has order {table.index}")
    logger.info(f"Gamma of {len(loops)} loops certified")
    return Certified("todd-coxeter", {"cosets": 1, "generators": q.rank, "relators": len(q.relators)})


# -- the semidirect-product presentation --------------------------------------

@dataclass
class DeckGroupPresentation:
    presentation: Presentation
    elements: List[Tuple[int, ...]]
    words: Dict[Tuple[int, ...], Word]


def deck_group_presentation(perms: Sequence[Sequence[int]], names: Sequence[str] = None,
                            degree: int = None) -> DeckGroupPresentation:
    """
    Presentation of the permutation group generated by ``perms``, read
    off a breadth-first spanning tree of the Cayley graph: every non-tree
    edge h --s--> hs gives the relator word(h) s word(hs)^-1.
    """
    perms = [tuple(p) for p in perms]
    names = list(names) if names else [f"g{i + 1}" for i in range(len(perms))]
    identity = perm_id(len(perms[0]) if perms else degree or 0)
    words: Dict[Tuple[int, ...], Word] = {identity: ()}
    elements = [identity]
    queue = deque([identity])
    relators: List[Word] = []
    tree_edges = set()
    while queue:
        h = queue.popleft()
        for s, p in enumerate(perms, start=1):
            hs = perm_compose(h, p)
            if hs not in words:
                words[hs] = words[h] + (s,)
                elements.append(hs)
                tree_edges.add((h, s))
                queue.append(hs)
    for h in elements:
        for s, p in enumerate(perms, start=1):
            if (h, s) in tree_edges:
                continue
            r = free_reduce(words[h] + (s,) + invert_word(words[perm_compose(h, p)]))
            if r:
                relators.append(r)
    p = simplify_relators_only(Presentation(tuple(names), tuple(relators)))
    return DeckGroupPresentation(p, elements, words)


def simplify_relators_only(p: Presentation) -> Presentation:
    """Drop repeated relators up to rotation and inversion, keeping the generators."""
    seen, kept = set(), []
    for r in p.relators:
        key = min(cyclic_conjugates(r) + cyclic_conjugates(invert_word(r)))
        if r and key not in seen:
            seen.add(key)
            kept.append(r)
    return Presentation(p.generators, tuple(kept))


@dataclass
class GEmptyPresentation:
    presentation: Presentation
    deck: DeckGroupPresentation
    domain: SimplicialComplex
    edge_generators: Tuple[Tuple[str, str], ...]

    def quotient_images(self, projection: Mapping[str, str], alphabet: EdgeAlphabet) -> List[Word]:
        """Deck generators to 1 and K-edges to their projected edges in ``alphabet``."""
        images: List[Word] = [() for _ in self.deck.presentation.generators]
        images += [(alphabet.letter(projection[x], projection[y]),) for x, y in self.edge_generators]
        return images


def g_empty_presentation(L: SimplicialComplex, cover: SimplicialComplex, projection: Mapping[str, str],
                         deck: Sequence[Mapping[str, str]], max_cosets: int = 10000) -> GEmptyPresentation:
    """
    Presentation of BB(cover) x| deck group, the group G_L(empty set), for a
    finite simply connected regular cover of L.

    Generators: a presentation of the deck group, then the directed edges
    of a fundamental domain K (the closure of one simplex per orbit).
    Relators: deck relators, the two triangle relators of each triangle of
    K, and g^-1 a g = b whenever the deck element g carries the K-edge a
    to the K-edge b.

    Raises
    ------
    PresentationError
        If the cover is not certified simply connected, a deck map does not
        commute with the projection, or the action fixes a positive-dimensional
        simplex.
    """
    from enumeration import Certified

    if any(projection.get(v) not in L for v in cover.vertices):
        raise PresentationError("projection must send every cover vertex to a vertex of L")
    certificate = validate_gamma(cover, [], max_cosets)
    if not isinstance(certificate, Certified):
        raise PresentationError("cover is not certified simply connected")

    gens: List[Tuple[int, ...]] = []
    for d in deck:
        if set(d) != set(cover.vertices) or set(d.values()) != set(cover.vertices):
            raise PresentationError("deck transformation must be a bijection of the cover vertices")
        if any(projection[d[v]] != projection[v] for v in cover.vertices):
            raise PresentationError("deck transformation does not commute with the projection")
        gens.append(tuple(cover.index(d[v]) for v in cover.vertices))
    group = deck_group_presentation(gens, degree=len(cover.vertices))

    for g in group.elements[1:]:
        for s in cover.simplices:
            if len(s) > 1 and tuple(sorted(g[x] for x in s)) == s:
                raise PresentationError(f"deck element fixes the simplex {list(cover.labels(s))}")

    # one representative per orbit, least in (dimension, index) order
    reps = set()
    covered = set()
    for s in sorted(cover.simplices, key=lambda s: (-len(s), s)):
        if s in covered:
            continue
        reps.add(s)
        for k in range(1, len(s) + 1):
            for face in itertools.combinations(s, k):
                covered.update(tuple(sorted(g[x] for x in face)) for g in group.elements)
    domain_simplices = set()
    for s in reps:
        for k in range(1, len(s) + 1):
            domain_simplices.update(itertools.combinations(s, k))
    used = sorted({x for s in domain_simplices for x in s})
    domain = SimplicialComplex([cover.vertices[x] for x in used], (cover.labels(s) for s in domain_simplices))

    k_edges = sorted(e for e in domain_simplices if len(e) == 2)
    offset = group.presentation.rank
    letter = {}
    for k, (i, j) in enumerate(k_edges, start=offset + 1):
        letter[i, j] = k
        letter[j, i] = -k

    relators: List[Word] = list(group.presentation.relators)
    for t in sorted(s for s in domain_simplices if len(s) == 3):
        i, j, k = t
        word = (letter[i, j], letter[j, k], letter[k, i])
        relators.append(word)
        relators.append(tuple(-a for a in word))
    for g in group.elements[1:]:
        w = group.words[g]
        for i, j in k_edges:
            image = (g[i], g[j])
            if image in letter:
                relators.append(free_reduce(invert_word(w) + (letter[i, j],) + w + (-letter[image],)))

    names = tuple(group.presentation.generators) + tuple(f"{cover.vertices[i]}>{cover.vertices[j]}" for i, j in k_edges)
    logger.info(f"G_L(empty): {len(names)} generators, {len(relators)} relators, deck order {len(group.elements)}")
    return GEmptyPresentation(Presentation(names, tuple(relators)), group, domain,
                              tuple((cover.vertices[i], cover.vertices[j]) for i, j in k_edges))
