"""
Semi-decision procedures on finite presentations.

* Todd-Coxeter coset enumeration (sympy's relator-based HLT strategy),
  giving subgroup indices when they are finite.
* Exact homomorphism counts into small finite groups, and
  finite-quotient witnesses that a word is nontrivial.
* The set R(G, g) of exponents n with g_1^n ... g_l^n = 1: positives are
  certified by explicit products of conjugated relators, negatives by
  witnesses, and everything else stays unknown.

Searches never raise on exhaustion; they return ``OutOfBudget`` or
``Inconclusive``.
"""
import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple, Union

from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import FreeGroupElement

from complexes import OutOfBudget
from finite_groups import FiniteGroup, battery, symmetric
from permutations import Perm, evaluate_word, perm_is_identity, perm_to_one_based
from presentations import (Presentation, Word, free_group_of_rank, free_reduce, invert_word, to_free_element,
                           word_power)

logger = logging.getLogger(__name__)

MAX_COSETS = 10000
HOM_ORDER_BOUND = 120
WITNESS_BUDGET = 10 ** 6
DERIVATION_BUDGET = 2000
EXHAUSTIVE_BUDGET = 2 * 10 ** 5


@dataclass
class Certified:
    """A positive answer backed by the named method."""
    method: str
    details: dict = field(default_factory=dict)


@dataclass
class Inconclusive:
    reason: str


class _SearchLimit(Exception):
    pass


# -- Todd-Coxeter -------------------------------------------------------------

class CosetTable:
    """
    Complete coset table of a subgroup H of a finitely presented group.

    Wraps a finished sympy coset enumeration. Column ``2 * (k - 1)`` holds
    the action of generator ``k`` and column ``2 * (k - 1) + 1`` that of its
    inverse, so ``col ^ 1`` is always the inverse column. Cosets are 0-based
    and coset 0 is H.
    """

    def __init__(self, presentation: Presentation, subgroup: Sequence[Sequence[int]], enumeration):
        self.presentation = presentation
        self.subgroup: List[Word] = [free_reduce(w) for w in subgroup]
        self.relators: List[Word] = [r for r in presentation.relators if r]
        self.enumeration = enumeration
        self.table: List[List[int]] = [list(row) for row in enumeration.table]

    @staticmethod
    def column(letter: int) -> int:
        return 2 * (abs(letter) - 1) + (1 if letter < 0 else 0)

    @property
    def index(self) -> int:
        return len(self.table)

    def standardize(self):
        """Renumber cosets in order of first appearance, reading the table row by row."""
        self.enumeration.standardize()
        self.table = [list(row) for row in self.enumeration.table]

    def trace(self, alpha: int, word: Sequence[int]) -> Optional[int]:
        for x in word:
            alpha = self.table[alpha][self.column(x)]
            if alpha is None:
                return None
        return alpha

    def verify(self) -> bool:
        """Check totality, mutual inverses, closed relators and subgroup words fixing coset 0."""
        for alpha, row in enumerate(self.table):
            for col, beta in enumerate(row):
                if beta is None or self.table[beta][col ^ 1] != alpha:
                    return False
        for alpha in range(len(self.table)):
            if any(self.trace(alpha, r) != alpha for r in self.relators):
                return False
        return all(self.trace(0, w) == 0 for w in self.subgroup)

    def rows(self) -> List[List[int]]:
        """1-based rows (generator and inverse columns alternating) of a standardized table."""
        return [[b + 1 for b in row] for row in self.table]


def todd_coxeter(p: Presentation, subgroup_words: Sequence[Sequence[int]] = (),
                 max_cosets: int = MAX_COSETS) -> Union[CosetTable, OutOfBudget]:
    """
    Enumerate the cosets of the subgroup generated by ``subgroup_words``
    with sympy's relator-based (HLT) enumeration.

    Returns the standardized, verified table, or ``OutOfBudget`` carrying
    the number of live cosets when ``max_cosets`` cosets have been defined.
    """
    F, _ = free_group_of_rank(p.rank)
    group = FpGroup(F, [to_free_element(r, p.rank) for r in p.relators if r])
    H = [to_free_element(w, p.rank) for w in subgroup_words if free_reduce(w)]
    try:
        enumeration = group.coset_enumeration(H, max_cosets=max_cosets, incomplete=True)
    except ValueError:
        logger.warning(f"coset enumeration stopped at {max_cosets} cosets while tracing subgroup words")
        return OutOfBudget("cosets", max_cosets, max_cosets)
    if not enumeration.is_complete():
        live = len(enumeration.omega)
        logger.warning(f"coset enumeration stopped at {max_cosets} cosets ({live} live)")
        return OutOfBudget("cosets", max_cosets, live)
    table = CosetTable(p, subgroup_words, enumeration)
    table.standardize()
    if not table.verify():
        raise RuntimeError("completed coset table failed verification")
    logger.info(f"coset enumeration finished: index {table.index}")
    return table


# -- homomorphisms into finite groups -----------------------------------------

def _generator_order(relators: Sequence[Word]) -> List[int]:
    """Generators occurring in relators, most occurrences first."""
    counts = Counter(abs(x) for r in relators for x in r)
    return sorted(counts, key=lambda g: (-counts[g], g))


def _homomorphisms(group: FiniteGroup, rank: int, relators: Sequence[Word], order: Sequence[int],
                   first_choices: Sequence[int] = None, counter: List[int] = None) -> Iterator[List[int]]:
    """
    Backtracking over images of the generators in ``order``.

    A relator whose letters are all assigned is checked at once; a relator
    with exactly one unassigned generator, occurring once, forces its value.
    ``first_choices`` restricts the first branching generator (used with
    conjugacy class representatives). ``counter`` is ``[used, limit]``.
    Yields 0-based image lists; generators outside ``order`` stay ``None``.
    """
    images: List[Optional[int]] = [None] * rank
    info = [(r, sorted({abs(x) for x in r}), Counter(abs(x) for x in r)) for r in relators]

    def propagate() -> Optional[List[int]]:
        forced: List[int] = []
        changed = True
        while changed:
            changed = False
            for r, gens, counts in info:
                missing = [g for g in gens if images[g - 1] is None]
                if not missing:
                    if group.evaluate(images, r) != 0:
                        for x in forced:
                            images[x - 1] = None
                        return None
                elif len(missing) == 1 and counts[missing[0]] == 1:
                    x = missing[0]
                    i = next(k for k, letter in enumerate(r) if abs(letter) == x)
                    w = group.evaluate(images, r[i + 1:] + r[:i])
                    images[x - 1] = group.invert(w) if r[i] > 0 else w
                    forced.append(x)
                    changed = True
        return forced

    def search(level: int, first: bool) -> Iterator[List[int]]:
        forced = propagate()
        if forced is None:
            return
        while level < len(order) and images[order[level] - 1] is not None:
            level += 1
        if level == len(order):
            yield list(images)
        else:
            g = order[level]
            choices = first_choices if first and first_choices is not None else range(group.order)
            for e in choices:
                if counter is not None:
                    counter[0] += 1
                    if counter[0] > counter[1]:
                        raise _SearchLimit
                images[g - 1] = e
                yield from search(level + 1, False)
                images[g - 1] = None
        for x in forced:
            images[x - 1] = None

    yield from search(0, True)


def hom_count(p: Presentation, target: Union[FiniteGroup, int], max_order: int = HOM_ORDER_BOUND) -> int:
    """
    Number of homomorphisms from the presented group to ``target`` (a
    ``FiniteGroup`` or a degree d standing for Sym(d)).

    Raises
    ------
    ValueError
        If the target is larger than ``max_order``.
    """
    group = target if isinstance(target, FiniteGroup) else symmetric(int(target))
    if group.order > max_order:
        raise ValueError(f"target group of order {group.order} exceeds the bound {max_order}")
    relators = [r for r in p.relators if r]
    order = _generator_order(relators)
    count = sum(1 for _ in _homomorphisms(group, p.rank, relators, order))
    total = count * group.order ** (p.rank - len(order))
    logger.debug(f"{total} homomorphisms into {group.name}")
    return total


def compare_hom_counts(p1: Presentation, p2: Presentation,
                       groups: Sequence[FiniteGroup] = None) -> Dict[str, Tuple[int, int]]:
    """Hom counts of both presentations into each group of the battery, by group name."""
    groups = battery(6) if groups is None else groups
    return {G.name: (hom_count(p1, G), hom_count(p2, G)) for G in groups}


@dataclass
class Witness:
    """A homomorphism to Sym(degree) under which ``word`` is not the identity."""
    degree: int
    images: List[Perm]
    word: Word

    def image(self, word: Sequence[int]) -> Perm:
        return evaluate_word(self.images, word, self.degree)

    def verify(self, p: Presentation) -> bool:
        return (all(perm_is_identity(self.image(r)) for r in p.relators)
                and not perm_is_identity(self.image(self.word)))

    def as_dict(self) -> dict:
        return {"degree": self.degree, "images": [perm_to_one_based(q) for q in self.images],
                "word": list(self.word)}


def witness_nontrivial(p: Presentation, w: Sequence[int], degree_bound: int = 4,
                       budget: int = WITNESS_BUDGET) -> Union[Witness, Inconclusive]:
    """
    Search Sym(2), ..., Sym(degree_bound) for a homomorphism that does not
    kill ``w``. The first branching generator only ranges over conjugacy
    class representatives.
    """
    w = free_reduce(w)
    if not w:
        return Inconclusive("the word is freely trivial")
    relators = [r for r in p.relators if r]
    order = _generator_order(relators)
    order += sorted({abs(x) for x in w} - set(order))
    counter = [0, budget]
    for d in range(2, degree_bound + 1):
        group = symmetric(d)
        try:
            for images in _homomorphisms(group, p.rank, relators, order,
                                         first_choices=group.class_representatives(), counter=counter):
                images = [0 if e is None else e for e in images]
                if group.evaluate(images, w) != 0:
                    witness = Witness(d, [group.elements[e] for e in images], w)
                    logger.debug(f"witness in degree {d} after {counter[0]} steps")
                    return witness
        except _SearchLimit:
            logger.warning(f"witness search budget of {budget} steps exhausted in degree {d}")
            return Inconclusive(f"budget of {budget} steps exhausted in degree {d}")
    return Inconclusive(f"no witness in degree <= {degree_bound}")


# -- the set R(G, g) -----------------------------------------------------------

def r_set_word(g: Sequence[Sequence[int]], n: int) -> Word:
    """Free reduction of g_1^n g_2^n ... g_l^n."""
    return free_reduce(itertools.chain.from_iterable(word_power(w, n) for w in g))


@dataclass
class Derivation:
    """An expression of a word as a product of conjugates c r^e c^-1 (relator index 1-based)."""
    factors: List[Tuple[Word, int, int]]

    def product(self, p: Presentation) -> Word:
        out: List[int] = []
        for c, k, e in self.factors:
            r = p.relators[k - 1] if e > 0 else invert_word(p.relators[k - 1])
            out.extend(c + r + invert_word(c))
        return free_reduce(out)

    def verify(self, p: Presentation, word: Sequence[int]) -> bool:
        return self.product(p) == free_reduce(word)

    def size(self) -> int:
        """Budget N needed: the larger of the factor count and the longest conjugator."""
        return max([len(self.factors)] + [len(c) for c, _, _ in self.factors])

    def as_dict(self) -> dict:
        return {"factors": [{"conjugator": list(c), "relator": k, "sign": e} for c, k, e in self.factors]}


def _rotations(p: Presentation) -> List[Tuple[Word, Word, int, int]]:
    """(rotation, prefix, relator index, sign) with rotation = prefix^-1 r^e prefix."""
    out = []
    for k, r in enumerate(p.relators, start=1):
        if not r:
            continue
        for e in (1, -1):
            base = r if e > 0 else invert_word(r)
            for i in range(len(base)):
                out.append((base[i:] + base[:i], base[:i], k, e))
    return out


def _derive(x: Word, factors: int, bound: int, rotations, seen: Dict[Word, int],
            counter: List[int]) -> Optional[List[Tuple[Word, int, int]]]:
    """
    Rewrite x = p s1 q, where s1 s2 is a rotation of a relator, into
    p s2^-1 q, never lengthening the word. Depth-first, shortest result first.
    """
    if not x:
        return []
    if factors == 0 or seen.get(x, -1) >= factors:
        return None
    seen[x] = factors
    moves = []
    for rot, prefix, k, e in rotations:
        for pos in range(len(x)):
            m = 0
            while m < len(rot) and pos + m < len(x) and x[pos + m] == rot[m]:
                m += 1
            if m == 0 or 2 * m < len(rot):
                continue
            c = free_reduce(x[:pos] + invert_word(prefix))
            if len(c) > bound:
                continue
            rest = free_reduce(x[:pos] + invert_word(rot[m:]) + x[pos + m:])
            moves.append((len(rest), -m, pos, rest, (c, k, e)))
    moves.sort(key=lambda t: t[:3])
    for _, _, _, rest, factor in moves:
        counter[0] += 1
        if counter[0] > counter[1]:
            raise _SearchLimit
        tail = _derive(rest, factors - 1, bound, rotations, seen, counter)
        if tail is not None:
            return [factor] + tail
    return None


def _reduced_words(rank: int, length: int) -> Iterator[Word]:
    letters = [x for g in range(1, rank + 1) for x in (g, -g)]
    frontier: List[Word] = [()]
    yield ()
    for _ in range(length):
        frontier = [w + (x,) for w in frontier for x in letters if not w or w[-1] != -x]
        yield from frontier


def _conjugate_count_bound(p: Presentation, bound: int) -> int:
    d = p.rank
    words = 1 + sum(2 * d * (2 * d - 1) ** (k - 1) for k in range(1, bound + 1)) if d else 1
    return words * 2 * sum(1 for r in p.relators if r)


def _conjugates(p: Presentation, bound: int) -> Dict[Word, Tuple[Word, int, int]]:
    """Reduced words c r^e c^-1 with |c| <= bound, each with one way of writing it."""
    out: Dict[Word, Tuple[Word, int, int]] = {}
    for c in _reduced_words(p.rank, bound):
        for k, r in enumerate(p.relators, start=1):
            if not r:
                continue
            for e in (1, -1):
                word = free_reduce(c + (r if e > 0 else invert_word(r)) + invert_word(c))
                out.setdefault(word, (c, k, e))
    return out


def _products_fit(size: int, depth: int, budget: int) -> bool:
    total, term = 1, 1
    for _ in range(depth):
        term *= size
        total += term
        if total > budget:
            return False
    return True


def _exhaustive(p: Presentation, x: Word, bound: int,
                budget: int) -> Tuple[bool, Optional[List[Tuple[Word, int, int]]]]:
    """
    Breadth-first search over products of at most ``bound`` conjugates.

    Returns ``(ran, factors)``: ``ran`` is False when the search would
    exceed the budget; otherwise ``factors`` is None exactly when x is not
    such a product.
    """
    if not _products_fit(_conjugate_count_bound(p, bound), bound, budget):
        return False, None
    # elements are keyed by their syllable tuples
    conjugates = [(to_free_element(w, p.rank), f) for w, f in _conjugates(p, bound).items()]
    target = to_free_element(x, p.rank)
    identity = free_group_of_rank(p.rank)[0].identity
    longest = max((len(w) for w, _ in conjugates), default=0)
    parents: Dict[Tuple, Tuple[Optional[Tuple], Optional[Tuple[Word, int, int]]]] = {(): (None, None)}
    frontier = [identity]
    for depth in range(1, bound + 1):
        nxt = []
        for w in frontier:
            for cw, factor in conjugates:
                v = w * cw
                key = v.array_form
                if key in parents:
                    continue
                if len(v ** -1 * target) > (bound - depth) * longest:
                    continue
                parents[key] = (w.array_form, factor)
                if v == target:
                    factors = []
                    while parents[key][0] is not None:
                        key, f = parents[key]
                        factors.append(f)
                    return True, list(reversed(factors))
                nxt.append(v)
        frontier = nxt
    return True, None


def _search(p: Presentation, x: Word, bound: int, derivation_budget: int,
            exhaustive_budget: int) -> Optional[Derivation]:
    """Look for x as a product of at most ``bound`` conjugates with conjugators of length at most ``bound``."""
    if not x:
        return Derivation([])
    counter = [0, derivation_budget]
    try:
        factors = _derive(x, bound, bound, _rotations(p), {}, counter)
    except _SearchLimit:
        factors = None
    if factors is not None:
        return Derivation(factors)
    _, found = _exhaustive(p, x, bound, exhaustive_budget)
    return Derivation(found) if found is not None else None


@dataclass
class RSetReport:
    """Three-way partition of [-N, N] into certified members, witnessed non-members and unknowns."""
    budget: int
    words: List[Word]
    positives: Dict[int, Derivation] = field(default_factory=dict)
    negatives: Dict[int, Witness] = field(default_factory=dict)
    unknown: List[int] = field(default_factory=list)

    def certified(self) -> List[int]:
        return sorted(self.positives)

    def as_dict(self) -> dict:
        return {
            "budget": self.budget,
            "words": [list(w) for w in self.words],
            "positives": {str(n): d.as_dict() for n, d in sorted(self.positives.items())},
            "negatives": {str(n): w.as_dict() for n, w in sorted(self.negatives.items())},
            "unknown": sorted(self.unknown),
        }


def iterate_r_set(p: Presentation, g: Sequence[Sequence[int]], n_max: int,
                  derivation_budget: int = DERIVATION_BUDGET,
                  exhaustive_budget: int = EXHAUSTIVE_BUDGET) -> Iterator[Tuple[int, Dict[int, Derivation]]]:
    """
    Yield ``(N, certified)`` for N = 1, ..., n_max, where certified maps
    each n with |n| <= N to a derivation of size at most N. A member found
    once is kept, so the sets only grow.
    """
    found: Dict[int, Derivation] = {}
    for N in range(1, n_max + 1):
        for n in range(-N, N + 1):
            if n in found:
                continue
            x = r_set_word(g, n)
            # older exponents already failed every smaller bound
            bounds = range(1, N + 1) if abs(n) == N else [N]
            for bound in bounds:
                d = _search(p, x, bound, derivation_budget, exhaustive_budget)
                if d is not None:
                    found[n] = d
                    break
        yield N, dict(found)


def r_set_enumerate(p: Presentation, g: Sequence[Sequence[int]], N: int,
                    derivation_budget: int = DERIVATION_BUDGET,
                    exhaustive_budget: int = EXHAUSTIVE_BUDGET) -> RSetReport:
    """Certified members of R(G, g) within [-N, N] at budget N; every other n is left unknown."""
    positives: Dict[int, Derivation] = {}
    for _, positives in iterate_r_set(p, g, N, derivation_budget, exhaustive_budget):
        pass
    if N == 0:
        positives = {0: Derivation([])}
    report = RSetReport(N, [tuple(w) for w in g], positives)
    report.unknown = [n for n in range(-N, N + 1) if n not in positives]
    logger.info(f"R-set at budget {N}: certified {report.certified()}")
    return report


def r_set_language(p: Presentation, g: Sequence[Sequence[int]], N: int,
                   budget: int = EXHAUSTIVE_BUDGET) -> Set[int]:
    """
    The exponents |n| <= N whose word lies in the list of reduced products
    of at most N conjugates w r^(+-1) w^-1 with |w| <= N, built literally.

    Raises
    ------
    ValueError
        If the list would exceed ``budget`` products.
    """
    conjugates = [to_free_element(w, p.rank) for w in _conjugates(p, N)]
    if not _products_fit(len(conjugates), N, budget):
        raise ValueError(f"the list of products at N = {N} exceeds {budget} entries")
    identity = free_group_of_rank(p.rank)[0].identity
    language: Set[Tuple] = {()}
    layer: Dict[Tuple, FreeGroupElement] = {(): identity}
    for _ in range(N):
        products = (w * c for w in layer.values() for c in conjugates)
        layer = {v.array_form: v for v in products}
        language.update(layer)
    return {n for n in range(-N, N + 1) if to_free_element(r_set_word(g, n), p.rank).array_form in language}


def r_set_report(p: Presentation, g: Sequence[Sequence[int]], N: int, degree_bound: int = 4,
                 derivation_budget: int = DERIVATION_BUDGET,
                 witness_budget: int = WITNESS_BUDGET) -> RSetReport:
    """
    Positives from ``r_set_enumerate``, negatives from finite-quotient
    witnesses, the rest unknown.

    Raises
    ------
    RuntimeError
        If a certificate fails to re-verify or a positive is contradicted
        by a witness.
    """
    report = r_set_enumerate(p, g, N, derivation_budget)
    unknown = []
    for n in range(-N, N + 1):
        word = r_set_word(g, n)
        if n in report.positives:
            if not report.positives[n].verify(p, word):
                raise RuntimeError(f"derivation for n = {n} does not reduce to its word")
            continue
        result = witness_nontrivial(p, word, degree_bound, witness_budget)
        if isinstance(result, Witness):
            if not result.verify(p):
                raise RuntimeError(f"witness for n = {n} does not re-verify")
            report.negatives[n] = result
        else:
            unknown.append(n)
    report.unknown = unknown
    for n in report.positives:
        word = r_set_word(g, n)
        for m, witness in report.negatives.items():
            if not perm_is_identity(witness.image(word)):
                raise RuntimeError(f"n = {n} is certified but the witness for n = {m} separates it")
    logger.info(f"R-set report: positives {report.certified()}, "
                f"negatives {sorted(report.negatives)}, unknown {report.unknown}")
    return report
