import unittest
from math import prod

import numpy as np
from sympy import Matrix

from complexes import (SimplicialComplex, cycle, euler_characteristic, higman_polygonal, named_complexes, octahedron,
                       rp2_6, simplex, subdivide_polygonal)
from homology import (ChainComplexError, HomologyGroup, HomologyProfile, IntegerMatrix, boundary_matrices,
                      cellular_homology, composes_to_zero, elementary_divisors, is_n_R_acyclic, is_R_acyclic,
                      parse_ring, profiles_agree, rank_mod_p, reduced_homology, smith_normal_form,
                      universal_coefficient_ranks)


class TestSmithNormalForm(unittest.TestCase):
    def test_factors(self):
        self.assertEqual(smith_normal_form(IntegerMatrix([[2, 4], [6, 8]])).factors, [2, 4])
        self.assertEqual(smith_normal_form(IntegerMatrix([[2, 0], [0, 3]])).factors, [1, 6])
        self.assertEqual(smith_normal_form(IntegerMatrix.zeros(3, 2)).factors, [])

    def test_transforms(self):
        A = IntegerMatrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
        result = smith_normal_form(A, transforms=True)
        self.assertEqual(result.factors, [2, 6, 12])
        self.assertEqual(result.left @ A @ result.right, result.diagonal())

    def test_agrees_with_sympy(self):
        rng = np.random.default_rng(20240601)
        for _ in range(20):
            entries = rng.integers(-6, 7, size=(4, 4)).tolist()
            factors = smith_normal_form(IntegerMatrix(entries)).factors
            m = Matrix(entries)
            self.assertEqual(len(factors), m.rank())
            if m.det() != 0:
                self.assertEqual(prod(factors), abs(m.det()))
            for a, b in zip(factors, factors[1:]):
                self.assertEqual(b % a, 0)

    def test_invariant_under_unimodular_changes(self):
        rng = np.random.default_rng(11)

        def unimodular(n):
            m = IntegerMatrix.identity(n)
            for _ in range(8):
                i, j = rng.choice(n, size=2, replace=False)
                m.entries[i] = m.entries[i] + int(rng.integers(-3, 4)) * m.entries[j]
                if rng.random() < 0.3:
                    m.entries[[i, j]] = m.entries[[j, i]]
                if rng.random() < 0.3:
                    m.entries[j] = -m.entries[j]
            return m

        for _ in range(25):
            rows, cols = int(rng.integers(2, 6)), int(rng.integers(2, 6))
            A = IntegerMatrix(rng.integers(-5, 6, size=(rows, cols)).tolist())
            B = unimodular(rows) @ A @ unimodular(cols)
            self.assertEqual(smith_normal_form(B).factors, smith_normal_form(A).factors)

    def test_exact_big_entries(self):
        product = IntegerMatrix([[2 ** 70]]) @ IntegerMatrix([[2]])
        self.assertEqual(product.tolist(), [[2 ** 71]])

    def test_rank_mod_p(self):
        A = IntegerMatrix([[1, 1], [1, -1]])
        self.assertEqual(rank_mod_p(A, 2), 1)
        self.assertEqual(rank_mod_p(A, 3), 2)
        self.assertEqual(rank_mod_p(IntegerMatrix.zeros(0, 4), 5), 0)


class TestHomology(unittest.TestCase):
    def test_projective_plane(self):
        z = reduced_homology(rp2_6())
        self.assertEqual(z.degree(1), HomologyGroup(0, (2,)))
        self.assertTrue(z.degree(2).is_zero())
        f2 = reduced_homology(rp2_6(), "F2")
        self.assertEqual(f2.degree(1).rank, 1)
        self.assertEqual(f2.degree(2).rank, 1)
        self.assertTrue(is_R_acyclic(rp2_6(), "Q"))
        self.assertTrue(is_R_acyclic(rp2_6(), "Fp", prime=3))
        self.assertFalse(is_R_acyclic(rp2_6()))
        self.assertEqual(universal_coefficient_ranks(z, 2), f2.ranks())

    def test_spheres(self):
        self.assertEqual(reduced_homology(octahedron()).ranks(), (0, 0, 0, 1))
        self.assertEqual(reduced_homology(cycle(4)).degree(1), HomologyGroup(1))
        self.assertTrue(is_n_R_acyclic(octahedron(), "Z", 1))
        self.assertFalse(is_n_R_acyclic(octahedron(), "Z", 2))

    def test_unreduced(self):
        two_points = SimplicialComplex(["a", "b"])
        self.assertEqual(reduced_homology(two_points).degree(0), HomologyGroup(1))
        self.assertEqual(reduced_homology(two_points, reduced=False).degree(0), HomologyGroup(2))
        self.assertEqual(reduced_homology(cycle(4), reduced=False).ranks(), (1, 1))

    def test_contractible(self):
        self.assertTrue(is_R_acyclic(simplex(3)))

    def test_higman_complexes_are_acyclic(self):
        self.assertTrue(reduced_homology(higman_polygonal()).is_zero())
        self.assertTrue(reduced_homology(subdivide_polygonal(higman_polygonal())).is_zero())

    def test_euler_characteristic(self):
        self.assertEqual(reduced_homology(octahedron()).euler_characteristic(), 2)
        self.assertEqual(reduced_homology(cycle(4), reduced=False).euler_characteristic(), 0)

    def test_chain_complex_errors(self):
        with self.assertRaises(ChainComplexError):
            cellular_homology([])
        with self.assertRaises(ChainComplexError):
            cellular_homology([IntegerMatrix([[1]]), IntegerMatrix([[1]])])
        with self.assertRaises(ChainComplexError):
            cellular_homology([IntegerMatrix([[1, 0]]), IntegerMatrix([[1]])])


class TestCorpusChainComplexes(unittest.TestCase):
    def test_boundary_of_boundary_vanishes(self):
        for name, build in named_complexes().items():
            mats = boundary_matrices(build(), augmented=True)
            for k in range(1, len(mats)):
                self.assertTrue(composes_to_zero(mats[k - 1], mats[k]), f"{name} in degree {k}")

    def test_rational_betti_numbers_sum_to_euler_characteristic(self):
        for name, build in named_complexes().items():
            c = build()
            chi = euler_characteristic(c) if isinstance(c, SimplicialComplex) else c.euler_characteristic()
            self.assertEqual(reduced_homology(c, "Q", reduced=False).euler_characteristic(), chi, name)


class TestProfiles(unittest.TestCase):
    def test_group_strings(self):
        self.assertEqual(str(HomologyGroup(0)), "0")
        self.assertEqual(str(HomologyGroup(1)), "Z")
        self.assertEqual(str(HomologyGroup(3)), "Z^3")
        self.assertEqual(str(HomologyGroup(1, (2,))), "Z + Z/2")

    def test_json(self):
        profile = reduced_homology(rp2_6())
        data = profile.to_json()
        self.assertTrue(data["reduced"])
        self.assertEqual(data["groups"][2], {"rank": 0, "torsion": [2]})
        self.assertEqual(HomologyProfile.from_json(data), profile)

    def test_profiles_agree(self):
        short = HomologyProfile("Z", [HomologyGroup(1)])
        padded = HomologyProfile("Z", [HomologyGroup(1), HomologyGroup(0)])
        self.assertTrue(profiles_agree(short, padded))
        self.assertFalse(profiles_agree(short, HomologyProfile("Q", [HomologyGroup(1)])))

    def test_rings(self):
        self.assertEqual(parse_ring("Fp", 5), ("F5", 5))
        self.assertEqual(parse_ring(" Q "), ("Q", None))
        for bad in ["F4", "R", "Fp"]:
            with self.assertRaises(ValueError):
                parse_ring(bad)
        self.assertEqual(elementary_divisors([12, 5]), [3, 4, 5])


if __name__ == '__main__':
    unittest.main()
