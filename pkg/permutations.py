"""
Permutations of {0, ..., n-1} stored as tuples of images.

Products use the right action: ``perm_compose(p1, p2)`` applies ``p1``
first, so words over permutations are evaluated left to right. Files and
the command line use 1-based images; convert at the boundary with
``perm_from_one_based`` / ``perm_to_one_based``.
"""
from itertools import permutations as _all_orderings
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

Perm = Tuple[int, ...]


def perm_check(p: Sequence[int], n: int = None) -> bool:
    """Return whether ``p`` is a permutation of ``range(n)``."""
    if n is None:
        n = len(p)
    return len(p) == n and sorted(p) == list(range(n))


def perm_id(n: int) -> Perm:
    return tuple(range(n))


def perm_is_identity(p: Sequence[int]) -> bool:
    return all(i == j for i, j in enumerate(p))


def perm_from_one_based(images: Sequence[int]) -> Perm:
    """
    Convert 1-based images (the file format) to a permutation.

    Raises
    ------
    ValueError
        If the images do not form a permutation of 1..n.
    """
    p = tuple(int(i) - 1 for i in images)
    if not perm_check(p):
        raise ValueError(f"not a permutation of 1..{len(p)}: {list(images)}")
    return p


def perm_to_one_based(p: Sequence[int]) -> List[int]:
    return [i + 1 for i in p]


def perm_compose(p1: Sequence[int], p2: Sequence[int]) -> Perm:
    """Return the product ``p1 p2`` (``p1`` is applied first)."""
    return tuple(p2[i] for i in p1)


def perm_invert(p: Sequence[int]) -> Perm:
    r = [0] * len(p)
    for i, j in enumerate(p):
        r[j] = i
    return tuple(r)


def perm_power(p: Sequence[int], k: int) -> Perm:
    if k < 0:
        p, k = perm_invert(p), -k
    result = perm_id(len(p))
    base = tuple(p)
    while k:
        if k & 1:
            result = perm_compose(result, base)
        base = perm_compose(base, base)
        k >>= 1
    return result


def perm_conjugate(p1: Sequence[int], p2: Sequence[int]) -> Perm:
    """Return ``p2^-1 p1 p2``, i.e. ``p1`` relabelled through ``p2``."""
    return perm_compose(perm_compose(perm_invert(p2), p1), p2)


def perm_cycles(p: Sequence[int], singletons: bool = False) -> List[Tuple[int, ...]]:
    seen = [False] * len(p)
    cycles = []
    for i in range(len(p)):
        if seen[i]:
            continue
        cycle = []
        j = i
        while not seen[j]:
            seen[j] = True
            cycle.append(j)
            j = p[j]
        if singletons or len(cycle) > 1:
            cycles.append(tuple(cycle))
    return cycles


def perm_cycle_type(p: Sequence[int]) -> Tuple[int, ...]:
    return tuple(sorted((len(c) for c in perm_cycles(p, singletons=True)), reverse=True))


def perm_from_cycles(cycles: Iterable[Sequence[int]], n: int) -> Perm:
    """Build a permutation of ``range(n)`` from disjoint 0-based cycles."""
    r = list(range(n))
    for cycle in cycles:
        for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
            r[a] = b
    if not perm_check(r):
        raise ValueError(f"cycles {list(cycles)} are not disjoint in degree {n}")
    return tuple(r)


def perm_order(p: Sequence[int]) -> int:
    order = 1
    for cycle in perm_cycles(p):
        a, b = order, len(cycle)
        while b:
            a, b = b, a % b
        order = order * len(cycle) // a
    return order


def perm_cycle_string(p: Sequence[int]) -> str:
    """1-based cycle notation, ``()`` for the identity."""
    cycles = perm_cycles(p)
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(i + 1) for i in c) + ")" for c in cycles)


def all_perms(n: int) -> Iterator[Perm]:
    return _all_orderings(range(n))


def _partitions(n: int, largest: int = None) -> Iterator[Tuple[int, ...]]:
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def conjugacy_class_representatives(n: int) -> List[Perm]:
    """One permutation of each cycle type in Sym(n), identity first."""
    reps = []
    for shape in reversed(list(_partitions(n))):
        cycles, start = [], 0
        for length in shape:
            cycles.append(tuple(range(start, start + length)))
            start += length
        reps.append(perm_from_cycles(cycles, n))
    return reps


def evaluate_word(images: Sequence[Sequence[int]], word: Sequence[int], n: int) -> Perm:
    """
    Evaluate a word of signed 1-based generator indices on permutation images.

    Parameters
    ----------
    images : sequence of permutations
        ``images[i]`` is the image of generator ``i + 1``.
    word : sequence of int
        Letters ``k`` / ``-k`` for generator ``k`` and its inverse.
    n : int
        Degree, used for the empty word.
    """
    result = perm_id(n)
    inverses: Dict[int, Perm] = {}
    for letter in word:
        g = abs(letter) - 1
        if letter > 0:
            step = tuple(images[g])
        else:
            if g not in inverses:
                inverses[g] = perm_invert(images[g])
            step = inverses[g]
        result = perm_compose(result, step)
    return result
