"""
Small finite groups given by Cayley tables, the targets of homomorphism
counts and witness searches.

Every group is a sympy permutation group tabulated once; element 0 is the
identity and the remaining elements are numbered in lexicographic order of
their array forms.
"""
import logging
from typing import Dict, List, Sequence

import numpy as np
from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.group_constructs import DirectProduct
from sympy.combinatorics.named_groups import CyclicGroup, DihedralGroup, SymmetricGroup

from permutations import Perm

logger = logging.getLogger(__name__)


class FiniteGroup:
    """
    A finite permutation group with its multiplication table.

    Attributes
    ----------
    name : str
    group : sympy.combinatorics.PermutationGroup
    elements : list of Perm
        Array forms; ``elements[0]`` is the identity.
    table : numpy.ndarray
        ``table[i, j]`` is the index of ``elements[i] * elements[j]``
        (``elements[i]`` applied first).
    inverse : numpy.ndarray
        ``inverse[i]`` is the index of the inverse of ``elements[i]``.
    """

    def __init__(self, name: str, group: PermutationGroup):
        self.name = name
        self.group = group
        self.degree = group.degree
        self.elements: List[Perm] = sorted(tuple(p.array_form) for p in group.generate(af=False))
        self._index: Dict[Perm, int] = {p: i for i, p in enumerate(self.elements)}
        n, d = len(self.elements), self.degree
        # array forms read as base-d numbers; lexicographic order makes the keys increasing
        forms = np.array(self.elements, dtype=np.int64).reshape(n, d)
        weights = d ** np.arange(d - 1, -1, -1, dtype=np.int64)
        keys = forms @ weights
        self.table = np.empty((n, n), dtype=np.int64)
        for i in range(n):
            # row j of forms[:, forms[i]] is elements[i] followed by elements[j]
            self.table[i] = np.searchsorted(keys, forms[:, forms[i]] @ weights)
        self.inverse = np.searchsorted(keys, np.argsort(forms, axis=1) @ weights).astype(np.int64)
        logger.debug(f"built {name} of order {n}")

    @classmethod
    def from_generators(cls, name: str, generators: Sequence[Sequence[int]]) -> "FiniteGroup":
        return cls(name, PermutationGroup([Permutation(list(g)) for g in generators]))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def index_of(self, p: Sequence[int]) -> int:
        return self._index[tuple(p)]

    def multiply(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def invert(self, i: int) -> int:
        return int(self.inverse[i])

    def element_order(self, i: int) -> int:
        return int(Permutation(list(self.elements[i])).order())

    def evaluate(self, images: Sequence[int], word: Sequence[int]) -> int:
        """Evaluate a word of signed 1-based letters on generator images (element indices)."""
        result = 0
        for letter in word:
            x = images[abs(letter) - 1]
            result = int(self.table[result, x if letter > 0 else self.inverse[x]])
        return result

    def is_abelian(self) -> bool:
        return bool(self.group.is_abelian)

    def conjugacy_classes(self) -> List[List[int]]:
        """Classes as sorted element indices, ordered by their least index."""
        classes = [sorted(self._index[tuple(p.array_form)] for p in cls) for cls in self.group.conjugacy_classes()]
        return sorted(classes)

    def class_representatives(self) -> List[int]:
        """The least element index of each conjugacy class, identity first."""
        return [cls[0] for cls in self.conjugacy_classes()]


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    return FiniteGroup(f"C{n}", CyclicGroup(n))


def dihedral(n: int) -> FiniteGroup:
    """The symmetry group of the regular n-gon, of order 2n (n >= 3)."""
    if n < 3:
        raise ValueError("dihedral groups are built for n >= 3; use direct products of cyclic groups below")
    return FiniteGroup(f"D{n}", DihedralGroup(n))


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("symmetric group degree must be positive")
    return FiniteGroup(f"S{n}", SymmetricGroup(n))


# unit products of the quaternions 1, i, j, k: (sign, unit)
_QUATERNION_UNITS = {
    (1, 1): (1, 0), (2, 2): (1, 0), (3, 3): (1, 0),
    (1, 2): (0, 3), (2, 1): (1, 3),
    (2, 3): (0, 1), (3, 2): (1, 1),
    (3, 1): (0, 2), (1, 3): (1, 2),
}


def _quaternion_product(x: int, y: int) -> int:
    sx, ux = divmod(x, 4)
    sy, uy = divmod(y, 4)
    if ux == 0:
        s, u = 0, uy
    elif uy == 0:
        s, u = 0, ux
    else:
        s, u = _QUATERNION_UNITS[ux, uy]
    return 4 * ((sx + sy + s) % 2) + u


def quaternion() -> FiniteGroup:
    """Q8 acting on itself by right multiplication (point 4s + u is (-1)^s times 1, i, j, k)."""
    gens = [[_quaternion_product(x, g) for x in range(8)] for g in (1, 2)]
    return FiniteGroup.from_generators("Q8", gens)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """G x H acting on the disjoint union of the two permutation domains."""
    return FiniteGroup(f"{g.name}x{h.name}", DirectProduct(g.group, h.group))


def battery(max_order: int = 8) -> List[FiniteGroup]:
    """All groups of order at most ``max_order`` (at most 8) up to isomorphism."""
    if max_order > 8:
        raise ValueError("the battery lists groups of order at most 8")
    c2 = cyclic(2)
    groups = [cyclic(1), c2, cyclic(3), cyclic(4), direct_product(c2, c2), cyclic(5),
              cyclic(6), symmetric(3), cyclic(7), cyclic(8), direct_product(cyclic(4), c2),
              direct_product(direct_product(c2, c2), c2), dihedral(4), quaternion()]
    return [G for G in groups if G.order <= max_order]
