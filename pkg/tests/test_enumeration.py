import unittest

import numpy as np

from complexes import OutOfBudget
from enumeration import (CosetTable, Derivation, Inconclusive, Witness, compare_hom_counts, hom_count,
                         iterate_r_set, r_set_enumerate, r_set_language, r_set_report, r_set_word, todd_coxeter,
                         witness_nontrivial)
from finite_groups import cyclic, direct_product, symmetric
from presentations import Presentation, cyclic_reduce

DIHEDRAL6 = Presentation(("r", "s"), ((1, 1, 1), (2, 2), (1, 2, 1, 2)))
FREE1 = Presentation(("a",))
FREE2 = Presentation(("a", "b"))
Z2 = Presentation(("a",), ((1, 1),))
COMMUTING = Presentation(("a", "b"), ((1, 2, -1, -2),))


def random_presentation(rng: np.random.Generator, rank: int) -> Presentation:
    """One or two nontrivial cyclically reduced relators of length at most 4."""
    relators = []
    count = int(rng.integers(1, 3))
    while len(relators) < count:
        size = int(rng.integers(1, 5))
        letters = rng.integers(1, rank + 1, size=size) * rng.choice([-1, 1], size=size)
        word = cyclic_reduce(tuple(int(x) for x in letters))
        if word:
            relators.append(word)
    return Presentation(("a", "b")[:rank], tuple(relators))


class TestToddCoxeter(unittest.TestCase):
    def test_dihedral_group(self):
        table = todd_coxeter(DIHEDRAL6)
        self.assertIsInstance(table, CosetTable)
        self.assertEqual(table.index, 6)
        self.assertTrue(table.verify())
        rows = table.rows()
        self.assertEqual(len(rows), 6)
        self.assertTrue(all(len(row) == 4 for row in rows))
        self.assertTrue(all(1 <= x <= 6 for row in rows for x in row))

    def test_subgroup_index(self):
        self.assertEqual(todd_coxeter(DIHEDRAL6, [(2,)]).index, 3)
        self.assertEqual(todd_coxeter(DIHEDRAL6, [(1,)]).index, 2)
        self.assertEqual(todd_coxeter(Z2).index, 2)

    def test_trivial_group(self):
        self.assertEqual(todd_coxeter(Presentation(())).index, 1)
        self.assertEqual(todd_coxeter(Presentation(("a",), ((1,),))).index, 1)

    def test_infinite_group_runs_out_of_budget(self):
        result = todd_coxeter(FREE1, max_cosets=20)
        self.assertIsInstance(result, OutOfBudget)
        self.assertEqual(result.limit, 20)
        self.assertLessEqual(result.used, 20)

    def test_standard_numbering(self):
        table = todd_coxeter(DIHEDRAL6, [(2,)])
        order = [1]
        for row in table.rows():
            for b in row:
                if b not in order:
                    order.append(b)
        self.assertEqual(order, [1, 2, 3])
        self.assertEqual(table.trace(0, (2,)), 0)


class TestHomomorphisms(unittest.TestCase):
    def test_counts(self):
        self.assertEqual(hom_count(FREE1, 3), 6)
        self.assertEqual(hom_count(Z2, 3), 4)
        self.assertEqual(hom_count(DIHEDRAL6, symmetric(3)), 10)
        self.assertEqual(hom_count(FREE2, cyclic(2)), 4)

    def test_order_bound(self):
        with self.assertRaises(ValueError):
            hom_count(FREE1, 6)

    def test_counts_multiply_over_direct_products(self):
        pairs = [(cyclic(2), cyclic(3)), (symmetric(3), cyclic(2)), (cyclic(4), symmetric(3))]
        for p in [DIHEDRAL6, Z2, FREE2, COMMUTING]:
            for G, H in pairs:
                product = hom_count(p, direct_product(G, H))
                self.assertEqual(product, hom_count(p, G) * hom_count(p, H), f"{p.relators} into {G.name}x{H.name}")

    def test_compare(self):
        counts = compare_hom_counts(FREE1, FREE1, [cyclic(2), symmetric(3)])
        self.assertEqual(counts, {"C2": (2, 2), "S3": (6, 6)})


class TestWitnesses(unittest.TestCase):
    def test_free_generator(self):
        w = witness_nontrivial(FREE1, (1,))
        self.assertIsInstance(w, Witness)
        self.assertEqual(w.degree, 2)
        self.assertTrue(w.verify(FREE1))
        self.assertEqual(w.as_dict(), {"degree": 2, "images": [[2, 1]], "word": [1]})

    def test_needs_degree_three(self):
        w = witness_nontrivial(FREE1, (1, 1), degree_bound=3)
        self.assertEqual(w.degree, 3)

    def test_trivial_words(self):
        self.assertIsInstance(witness_nontrivial(Z2, (1, 1)), Inconclusive)
        self.assertIsInstance(witness_nontrivial(FREE1, (1, -1)), Inconclusive)

    def test_budget(self):
        result = witness_nontrivial(FREE2, (1, 2, -1, -2), degree_bound=4, budget=1)
        self.assertIsInstance(result, Inconclusive)
        self.assertIn("budget", result.reason)


class TestRSet(unittest.TestCase):
    def test_words(self):
        self.assertEqual(r_set_word([(1,), (2,)], 2), (1, 1, 2, 2))
        self.assertEqual(r_set_word([(1,), (2,)], 0), ())
        self.assertEqual(r_set_word([(1,), (-1,)], 3), ())

    def test_derivation(self):
        d = Derivation([((), 1, 1)])
        self.assertEqual(d.product(Z2), (1, 1))
        self.assertTrue(d.verify(Z2, (1, 1)))
        self.assertEqual(d.size(), 1)
        conjugated = Derivation([((2,), 1, -1)])
        self.assertEqual(conjugated.product(Presentation(("a", "b"), ((1, 1),))), (2, -1, -1, -2))

    def test_z2(self):
        report = r_set_report(Z2, [(1,)], 2)
        self.assertEqual(report.certified(), [-2, 0, 2])
        self.assertEqual(sorted(report.negatives), [-1, 1])
        self.assertEqual(report.unknown, [])
        data = report.as_dict()
        self.assertEqual(sorted(data["positives"]), ["-2", "0", "2"])

    def test_free_group(self):
        report = r_set_report(FREE1, [(1,)], 2, degree_bound=3)
        self.assertEqual(report.certified(), [0])
        self.assertEqual(sorted(report.negatives), [-2, -1, 1, 2])
        for witness in report.negatives.values():
            self.assertTrue(witness.verify(FREE1))

    def test_sets_only_grow(self):
        previous = set()
        for N, found in iterate_r_set(Z2, [(1,)], 4):
            self.assertTrue(previous <= set(found))
            self.assertTrue(all(abs(n) <= N for n in found))
            previous = set(found)
        self.assertEqual(previous, {-4, -2, 0, 2, 4})

    def test_language_agrees_on_small_budget(self):
        self.assertEqual(r_set_language(Z2, [(1,)], 2), {-2, 0, 2})

    def test_certified_exponents_match_the_literal_language(self):
        rng = np.random.default_rng(7)
        for rank, budget, g in [(1, 3, [(1,)]), (2, 2, [(1,), (2,)]), (2, 2, [(1, 2)])]:
            for _ in range(4):
                p = random_presentation(rng, rank)
                for N in range(1, budget + 1):
                    certified = set(r_set_enumerate(p, g, N).certified())
                    self.assertEqual(certified, r_set_language(p, g, N), f"{p.relators} at N = {N}")


if __name__ == '__main__':
    unittest.main()
