import unittest

from permutations import (conjugacy_class_representatives, evaluate_word, perm_compose, perm_cycle_string,
                          perm_cycle_type, perm_from_cycles, perm_from_one_based, perm_id, perm_invert,
                          perm_is_identity, perm_order, perm_power, perm_to_one_based)


class TestPermutations(unittest.TestCase):
    def test_compose_applies_left_factor_first(self):
        self.assertEqual(perm_compose((1, 0, 2), (0, 2, 1)), (2, 0, 1))

    def test_inverse(self):
        p = (2, 0, 3, 1)
        self.assertTrue(perm_is_identity(perm_compose(p, perm_invert(p))))
        self.assertTrue(perm_is_identity(perm_compose(perm_invert(p), p)))

    def test_powers(self):
        rotation = (1, 2, 0)
        self.assertEqual(perm_power(rotation, 3), perm_id(3))
        self.assertEqual(perm_power(rotation, -1), perm_invert(rotation))
        self.assertEqual(perm_power(rotation, 0), perm_id(3))

    def test_one_based_conversion(self):
        self.assertEqual(perm_from_one_based([2, 1, 3]), (1, 0, 2))
        self.assertEqual(perm_to_one_based((1, 0, 2)), [2, 1, 3])
        with self.assertRaises(ValueError):
            perm_from_one_based([1, 1])

    def test_order_and_cycles(self):
        p = (1, 0, 3, 4, 2)
        self.assertEqual(perm_order(p), 6)
        self.assertEqual(perm_cycle_type(p), (3, 2))
        self.assertEqual(perm_cycle_string((1, 0, 2)), "(1,2)")
        self.assertEqual(perm_cycle_string(perm_id(4)), "()")

    def test_from_cycles(self):
        self.assertEqual(perm_from_cycles([(0, 1, 2)], 4), (1, 2, 0, 3))
        with self.assertRaises(ValueError):
            perm_from_cycles([(0, 1), (1, 2)], 3)

    def test_class_representatives(self):
        reps = conjugacy_class_representatives(4)
        self.assertEqual(len(reps), 5)
        self.assertEqual(reps[0], perm_id(4))
        self.assertEqual(sorted(perm_cycle_type(p) for p in reps),
                         sorted([(1, 1, 1, 1), (2, 1, 1), (2, 2), (3, 1), (4,)]))

    def test_evaluate_word(self):
        a, b = (1, 0, 2), (0, 2, 1)
        self.assertEqual(evaluate_word([a, b], [1, -2], 3), (2, 0, 1))
        self.assertEqual(evaluate_word([a, b], [], 3), perm_id(3))
        self.assertEqual(evaluate_word([a, b], [1, 1], 3), perm_id(3))


if __name__ == '__main__':
    unittest.main()
