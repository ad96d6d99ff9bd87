import unittest

import networkx as nx
import numpy as np

from complexes import (ComplexError, PolygonalComplex, SimplicialComplex, are_isomorphic, barycentric_subdivision,
                       boundary_of_simplex, cycle, cycle4_polygonal, disjoint_union, euler_characteristic,
                       flag_completion, full_subcomplex, has_nlcp, higman_polygonal, is_connected, is_flag, is_full,
                       is_isomorphism, join, link, named_complexes, named_loops, octahedron, path, random_complex,
                       rp2_6, simplex, star, subdivide_polygonal, validate)
from homology import reduced_homology


class TestSimplicialComplex(unittest.TestCase):
    def test_closure_on_load(self):
        c = SimplicialComplex(["a", "b", "c"], [["a", "b", "c"]])
        self.assertEqual(c.f_vector(), (3, 3, 1))
        self.assertEqual(c.dimension, 2)
        self.assertTrue(c.has_simplex(["c", "a"]))

    def test_unknown_vertex_raises(self):
        with self.assertRaises(ComplexError):
            SimplicialComplex(["a"], [["a", "z"]])
        with self.assertRaises(ComplexError):
            SimplicialComplex(["a", "a"])

    def test_validate_reports_problems(self):
        unclosed = SimplicialComplex(["a", "b"], [["a", "b"]], close=False)
        report = validate(unclosed)
        self.assertTrue(report)
        self.assertTrue(all(d.kind == "closure" for d in report))
        dangling = SimplicialComplex(["a"], [["a", "z"]], close=False)
        self.assertIn("dangling_vertex", [d.kind for d in validate(dangling)])
        self.assertEqual(validate(simplex(2)), [])

    def test_from_maximal_and_relabel(self):
        c = SimplicialComplex.from_maximal([["x", "y"], ["y", "z"]])
        self.assertEqual(c.vertices, ("x", "y", "z"))
        self.assertEqual(c.relabel({"x": "1", "y": "2", "z": "3"}), path(3))

    def test_one_skeleton(self):
        g = octahedron().one_skeleton()
        self.assertEqual(g.number_of_edges(), 12)
        self.assertFalse(g.has_edge("1", "2"))


class TestPredicates(unittest.TestCase):
    def test_flag(self):
        self.assertTrue(is_flag(simplex(2)))
        self.assertFalse(is_flag(boundary_of_simplex(2)))
        self.assertTrue(is_flag(cycle(4)))
        self.assertTrue(is_flag(octahedron()))
        self.assertFalse(is_flag(rp2_6()))

    def test_nlcp(self):
        self.assertTrue(has_nlcp(octahedron()))
        self.assertFalse(has_nlcp(simplex(1)))
        bowtie = SimplicialComplex.from_maximal([["1", "2", "3"], ["1", "4", "5"]])
        self.assertFalse(has_nlcp(bowtie))
        with self.assertRaises(ComplexError):
            has_nlcp(simplex(0))

    def test_link_and_star(self):
        lk = link(octahedron(), "1")
        self.assertEqual(lk.f_vector(), (4, 4))
        self.assertTrue(is_connected(lk))
        self.assertEqual(star(octahedron(), "1").f_vector(), (5, 8, 4))

    def test_euler_characteristic(self):
        self.assertEqual(euler_characteristic(octahedron()), 2)
        self.assertEqual(euler_characteristic(rp2_6()), 1)
        self.assertEqual(euler_characteristic(cycle(5)), 0)

    def test_full_subcomplex(self):
        solid = simplex(2)
        edge = SimplicialComplex(["1", "2"], [["1", "2"]])
        self.assertEqual(full_subcomplex(solid, ["1", "2"]), edge)
        self.assertTrue(is_full(solid, edge))
        self.assertFalse(is_full(solid, boundary_of_simplex(2)))
        self.assertFalse(is_full(solid, SimplicialComplex(["9"])))

    def test_connectivity(self):
        self.assertTrue(is_connected(path(4)))
        self.assertFalse(is_connected(SimplicialComplex(["a", "b"])))


class TestIsomorphism(unittest.TestCase):
    def test_relabelled_cycle(self):
        c = cycle(6)
        d = c.relabel({v: f"v{v}" for v in c.vertices})
        found = are_isomorphic(c, d)
        self.assertIsInstance(found, dict)
        self.assertTrue(is_isomorphism(found, c, d))

    def test_non_isomorphic(self):
        self.assertIsNone(are_isomorphic(cycle(4), path(4)))
        self.assertIsNone(are_isomorphic(simplex(2), boundary_of_simplex(2)))

    def test_octahedron_is_join_of_three_zero_spheres(self):
        pairs = [SimplicialComplex([f"{x}{i}" for i in (1, 2)]) for x in "abc"]
        c = join(join(pairs[0], pairs[1]), pairs[2])
        self.assertIsInstance(are_isomorphic(c, octahedron()), dict)


class TestSubdivisions(unittest.TestCase):
    def test_barycentric_of_triangle(self):
        self.assertEqual(barycentric_subdivision(simplex(2)).f_vector(), (7, 12, 6))

    def test_square_subdivision_is_simplicial(self):
        delta = subdivide_polygonal(cycle4_polygonal())
        self.assertEqual(delta.f_vector(), (9, 16, 8))
        self.assertEqual(delta.to_simplicial().f_vector(), (9, 16, 8))

    def test_higman_pipeline_counts(self):
        delta = subdivide_polygonal(higman_polygonal())
        self.assertEqual(delta.f_vector(), (9, 48, 40))
        self.assertEqual(delta.euler_characteristic(), 1)
        with self.assertRaises(ComplexError):
            delta.to_simplicial()
        L = barycentric_subdivision(delta)
        self.assertEqual(L.f_vector(), (97, 336, 240))
        self.assertTrue(is_flag(L))
        self.assertTrue(has_nlcp(L))

    def test_barycentric_subdivisions_are_flag(self):
        rng = np.random.default_rng(2024)
        for _ in range(120):
            c = random_complex(6, rng)
            self.assertTrue(is_flag(barycentric_subdivision(c)), repr(c))

    def test_polygonal_face_must_close(self):
        with self.assertRaises(ComplexError):
            PolygonalComplex(("1", "2", "3"), (("1", "2"), ("2", "3")), (((0, 1), (1, 1)),))


class TestBuilders(unittest.TestCase):
    def test_flag_completion(self):
        self.assertEqual(flag_completion(nx.cycle_graph(3)).f_vector(), (3, 3, 1))
        self.assertEqual(flag_completion(nx.cycle_graph(4)).f_vector(), (4, 4))

    def test_random_complex_is_seeded(self):
        a = random_complex(7, np.random.default_rng(5))
        b = random_complex(7, np.random.default_rng(5))
        self.assertEqual(a, b)
        self.assertLessEqual(len(a.vertices), 7)

    def test_euler_characteristic_adds_over_components(self):
        rng = np.random.default_rng(31)
        for _ in range(40):
            left = random_complex(5, rng)
            right = random_complex(5, rng)
            right = right.relabel({v: f"r{v}" for v in right.vertices})
            union = disjoint_union(left, right)
            self.assertEqual(euler_characteristic(union), euler_characteristic(left) + euler_characteristic(right))
            self.assertEqual(reduced_homology(union, "Q", reduced=False).euler_characteristic(),
                             euler_characteristic(union))

    def test_named(self):
        names = named_complexes()
        for name in ["point", "edge", "path3", "square", "pentagon", "solid_triangle", "hollow_triangle",
                     "octahedron", "rp2_barycentric", "higman_polygonal", "higman_flag"]:
            self.assertIn(name, names)
        self.assertEqual(names["square"](), cycle(4))
        self.assertEqual(named_loops()["square"]["boundary"], [["1", "2", "3", "4"]])


if __name__ == '__main__':
    unittest.main()
