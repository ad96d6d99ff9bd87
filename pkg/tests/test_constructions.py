import unittest

import numpy as np

from complexes import (ComplexError, SimplicialComplex, are_isomorphic, cycle, euler_characteristic, has_nlcp,
                       is_connected, is_full, octahedron, path, rp2_6, simplex)
from constructions import (SignFunction, VoltageAssignment, VoltageError, build_cover, check_homotopy_invariants,
                           deck_transformations, lifted_voltage, mapping_cylinder_N, nlcp_repair_M, opposite_pairs,
                           orientation_double_voltage, projection_map, pullback_square_check,
                           retraction_section, section_is_simplicial, sheet_label, signed, sphere_link,
                           split_sheet, unsigned, voltage_from_homomorphism)

SWAP = (1, 0)


class TestLabels(unittest.TestCase):
    def test_signed(self):
        self.assertEqual(signed("v", 1), "v+")
        self.assertEqual(signed("v", -1), "v−")
        self.assertEqual(unsigned("v−"), ("v", -1))
        with self.assertRaises(ComplexError):
            unsigned("v")

    def test_sheets(self):
        self.assertEqual(sheet_label("v", 2), "v#2")
        self.assertEqual(split_sheet("a#b#3"), ("a#b", 3))
        with self.assertRaises(ComplexError):
            split_sheet("x")


class TestSphereLink(unittest.TestCase):
    def test_small_cases(self):
        self.assertEqual(sphere_link(simplex(1)).f_vector(), (4, 4))
        self.assertIsInstance(are_isomorphic(sphere_link(simplex(2)), octahedron()), dict)
        self.assertEqual(sphere_link(cycle(4)).f_vector(), (8, 16))

    def test_projection_and_section(self):
        L = octahedron()
        SL = sphere_link(L)
        projection = projection_map(SL)
        self.assertEqual(projection[signed("3", -1)], "3")
        g = SignFunction.random(L, np.random.default_rng(7))
        section = retraction_section(L, g)
        self.assertTrue(all(projection[section[v]] == v for v in L.vertices))
        self.assertTrue(section_is_simplicial(L, g, SL))
        self.assertTrue(section_is_simplicial(L, SignFunction.constant(L, -1)))

    def test_sign_function_must_cover_vertices(self):
        with self.assertRaises(ComplexError):
            retraction_section(path(3), SignFunction({"1": 1, "2": -1}))


class TestRepair(unittest.TestCase):
    def test_mapping_cylinder_of_an_edge(self):
        n = mapping_cylinder_N(simplex(1))
        self.assertEqual(len(n.vertices), 5)
        self.assertEqual(n.dimension, 2)

    def test_path(self):
        L = path(3)
        M, embedding = nlcp_repair_M(L)
        self.assertEqual(embedding, {v: v for v in L.vertices})
        self.assertTrue(has_nlcp(M))
        self.assertTrue(is_full(M, L, embedding))
        self.assertTrue(check_homotopy_invariants(L, M).passed)

    def test_isolated_vertex(self):
        with self.assertRaises(ComplexError):
            nlcp_repair_M(SimplicialComplex(["a", "b", "c"], [["a", "b"]]))


class TestVoltages(unittest.TestCase):
    def test_validation(self):
        with self.assertRaises(VoltageError):
            VoltageAssignment(simplex(2), 2, {("1", "2"): SWAP})
        with self.assertRaises(VoltageError):
            VoltageAssignment(cycle(4), 2, {("1", "3"): SWAP})
        with self.assertRaises(VoltageError):
            VoltageAssignment(cycle(4), 2, {("1", "2"): (0, 1, 2)})
        with self.assertRaises(VoltageError):
            VoltageAssignment(cycle(4), 0)

    def test_one_based(self):
        rho = VoltageAssignment.from_one_based(cycle(4), 2, [("2", "1", [2, 1])])
        self.assertEqual(rho.rho("1", "2"), SWAP)
        self.assertEqual(rho.edges(), [("1", "2", [2, 1])])
        with self.assertRaises(VoltageError):
            VoltageAssignment.from_one_based(cycle(4), 2, [("1", "2", [1, 1])])

    def test_from_homomorphism(self):
        rho = voltage_from_homomorphism(cycle(4), [SWAP, (0, 1), (0, 1), (0, 1)])
        self.assertEqual(rho.edges(), [("1", "2", [2, 1])])


class TestCovers(unittest.TestCase):
    def test_square_double_cover(self):
        rho = VoltageAssignment(cycle(4), 2, {("1", "2"): SWAP})
        cover = build_cover(cycle(4), rho)
        self.assertEqual(cover.complex.f_vector(), (8, 8))
        self.assertTrue(is_connected(cover.complex))
        self.assertEqual(cover.fibre("3"), ["3#1", "3#2"])
        self.assertEqual(cover.projection["3#2"], "3")
        trivial = build_cover(cycle(4), VoltageAssignment.trivial(cycle(4), 2))
        self.assertFalse(is_connected(trivial.complex))

    def test_projective_plane_is_covered_by_a_sphere(self):
        L = rp2_6()
        cover = build_cover(L, orientation_double_voltage(L))
        self.assertEqual(cover.complex.f_vector(), (12, 30, 20))
        self.assertTrue(is_connected(cover.complex))
        self.assertEqual(euler_characteristic(cover.complex), 2)
        with self.assertRaises(ComplexError):
            orientation_double_voltage(cycle(4))

    def test_deck_transformations(self):
        rho = VoltageAssignment(cycle(4), 3, {("1", "2"): (1, 2, 0)})
        maps = deck_transformations(build_cover(cycle(4), rho))
        self.assertEqual(len(maps), 3)
        self.assertTrue(all(maps[0][x] == x for x in maps[0]))
        swapped = VoltageAssignment(cycle(4), 3, {("1", "2"): (1, 0, 2)})
        self.assertEqual(len(deck_transformations(build_cover(cycle(4), swapped))), 2)

    def test_pullback_square(self):
        rho = VoltageAssignment(cycle(4), 2, {("1", "2"): SWAP})
        result = pullback_square_check(cycle(4), rho)
        self.assertTrue(result.isomorphic)
        self.assertEqual(result.isomorphism[signed(sheet_label("1", 2), 1)], sheet_label(signed("1", 1), 2))
        with self.assertRaises(ComplexError):
            pullback_square_check(simplex(0), VoltageAssignment.trivial(simplex(0), 1))

    def test_opposite_pairs(self):
        L = cycle(4)
        rho = VoltageAssignment(L, 2, {("1", "2"): SWAP})
        SL = sphere_link(L)
        cover = build_cover(SL, lifted_voltage(L, rho, SL))
        pairs = opposite_pairs(cover)
        self.assertEqual(len(pairs), 16)
        self.assertEqual(pairs[sheet_label(signed("1", 1), 1)], sheet_label(signed("1", -1), 1))
        self.assertTrue(all(pairs[b] == a for a, b in pairs.items()))


if __name__ == '__main__':
    unittest.main()
