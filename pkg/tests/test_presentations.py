import unittest

from complexes import (barycentric_subdivision, boundary_of_simplex, cycle, higman_flag_complex, named_loops,
                       octahedron, path, rp2_6, simplex)
from enumeration import Certified, Inconclusive
from homology import HomologyGroup
from presentations import (HeightSet, Presentation, PresentationError, RaagWordProblem, abelianization,
                           bb_presentation, cyclic_reduce, deck_group_presentation, edge_alphabet,
                           edge_path_loop_word, edge_path_presentation, exponent_sums, free_group_of_rank,
                           free_reduce, from_free_element, g_empty_presentation, height_character, long_relator,
                           presentation_2complex, presentation_inclusion, raag_image_failures, simplify, substitute,
                           to_free_element, validate_gamma, word_power)

SQUARE_LOOP = ["1", "2", "3", "4"]


class TestWords(unittest.TestCase):
    def test_reduction(self):
        self.assertEqual(free_reduce((1, -1, 2)), (2,))
        self.assertEqual(free_reduce((1, 2, -2, -1)), ())
        self.assertEqual(cyclic_reduce((-1, 2, 1)), (2,))
        self.assertEqual(cyclic_reduce((1, 1, 2, 2, -1)), (1, 2, 2))
        self.assertEqual(cyclic_reduce(()), ())

    def test_free_group_elements(self):
        F, (x1, x2) = free_group_of_rank(2)
        self.assertEqual(to_free_element((1, 1, -2), 2), x1 ** 2 * x2 ** -1)
        self.assertEqual(to_free_element((1, 2, -2, -1), 2), F.identity)
        self.assertEqual(from_free_element(x2 * x1 ** -2), (2, -1, -1))
        self.assertEqual(free_reduce(from_free_element(x1 * x2) + (-2, -1, 2)), (2,))

    def test_powers(self):
        self.assertEqual(word_power((1, 2), -2), (-2, -1, -2, -1))
        self.assertEqual(word_power((1,), 0), ())
        self.assertEqual(long_relator((1, 2, 3), 3), (1, 1, 1, 2, 2, 2, 3, 3, 3))
        self.assertEqual(long_relator((1, 2), -1), (-1, -2))

    def test_substitute_and_sums(self):
        self.assertEqual(substitute((1, -2), [(2,), (1, 1)]), (2, -1, -1))
        self.assertEqual(exponent_sums((1, 1, -2), 3), [2, -1, 0])


class TestPresentation(unittest.TestCase):
    def test_validation(self):
        with self.assertRaises(PresentationError):
            Presentation(("a", "a"))
        with self.assertRaises(PresentationError):
            Presentation(("a", "b"), ((1, 3),))
        self.assertEqual(Presentation(("a",), ((1, 1, -1),)).relators, ((1,),))

    def test_parse_and_print(self):
        p = Presentation(("a", "b"))
        self.assertEqual(p.parse_word("a b^-1"), (1, -2))
        self.assertEqual(p.parse_word("abAB"), (1, 2, -1, -2))
        self.assertEqual(p.parse_word("a^3*b"), (1, 1, 1, 2))
        self.assertEqual(p.parse_word("1"), ())
        with self.assertRaises(PresentationError):
            p.parse_word("q")
        self.assertEqual(p.word_to_string((1, 1, -2)), "a^2 b^-1")
        self.assertEqual(str(Presentation(("a",), ((1, 1),))), "< a | a^2 >")

    def test_heights(self):
        s = HeightSet.parse("0,1,3")
        self.assertEqual(list(s), [0, 1, 3])
        self.assertEqual(s.nonzero(), [1, 3])
        self.assertEqual(list(HeightSet(frozenset({-2, 0})).normalized()), [0, 2])
        self.assertEqual(list(s.truncate(1)), [0, 1])
        with self.assertRaises(PresentationError):
            HeightSet.parse("0,x")

    def test_simplify(self):
        p = Presentation(("a", "b"), ((1,), (1, 2, 1, 2)))
        self.assertEqual(simplify(p), Presentation(("b",), ((1, 1),)))
        q = Presentation(("a", "b"), ((1, 2), (1, 1, 1)))
        self.assertEqual(simplify(q), Presentation(("a",), ((1, 1, 1),)))
        commutator = Presentation(("a", "b"), ((1, 2, -1, -2), (2, 1, -2, -1)))
        self.assertEqual(len(simplify(commutator).relators), 1)

    def test_abelianization(self):
        self.assertEqual(abelianization(Presentation(("a", "b"))), HomologyGroup(2))
        dihedral = Presentation(("r", "s"), ((1, 1, 1), (2, 2), (1, 2, 1, 2)))
        self.assertEqual(abelianization(dihedral), HomologyGroup(0, (2,)))

    def test_presentation_2complex(self):
        dihedral = Presentation(("r", "s"), ((1, 1, 1), (2, 2), (1, 2, 1, 2)))
        pc, profile = presentation_2complex(dihedral)
        self.assertEqual(pc.f_vector(), (1, 2, 3))
        self.assertEqual(profile.degree(1), HomologyGroup(0, (2,)))
        self.assertEqual(profile.degree(2).rank, 1)


class TestEdgePath(unittest.TestCase):
    def test_square_is_free_of_rank_one(self):
        p = simplify(edge_path_presentation(cycle(4)))
        self.assertEqual(p.rank, 1)
        self.assertEqual(p.relators, ())

    def test_simply_connected(self):
        self.assertEqual(simplify(edge_path_presentation(simplex(2))).rank, 0)
        self.assertEqual(abelianization(simplify(edge_path_presentation(rp2_6()))), HomologyGroup(0, (2,)))

    def test_loop_word(self):
        self.assertEqual(edge_path_loop_word(cycle(4), SQUARE_LOOP), (1, 3, 4, -2))
        with self.assertRaises(PresentationError):
            edge_path_loop_word(cycle(4), ["1", "3"])

    def test_validate_gamma(self):
        self.assertIsInstance(validate_gamma(cycle(4), [SQUARE_LOOP]), Certified)
        self.assertIsInstance(validate_gamma(cycle(4), [], max_cosets=50), Inconclusive)


class TestBBPresentation(unittest.TestCase):
    def test_square(self):
        p = bb_presentation(cycle(4), [SQUARE_LOOP], HeightSet.parse("0,3"))
        self.assertEqual(p.generators, ("a", "b", "c", "d"))
        self.assertEqual(p.relators, ((1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4),))
        self.assertEqual(p.word_to_string(p.relators[0]), "a^3 b^3 c^3 d^3")
        self.assertEqual(abelianization(p), HomologyGroup(3, (3,)))
        self.assertEqual(bb_presentation(cycle(4), [SQUARE_LOOP], [0]).relators, ())

    def test_triangle_relators(self):
        p = bb_presentation(simplex(2), [], [0])
        self.assertEqual(p.relators, ((1, 3, -2), (-1, -3, 2)))

    def test_preconditions(self):
        with self.assertRaises(PresentationError):
            bb_presentation(cycle(4), [SQUARE_LOOP], [1])
        with self.assertRaises(PresentationError):
            bb_presentation(boundary_of_simplex(2), [], [0])
        with self.assertRaises(PresentationError):
            bb_presentation(cycle(4), [["1", "3"]], [0, 1])

    def test_height_set_is_irrelevant_without_loops(self):
        for L in [simplex(2), octahedron(), barycentric_subdivision(simplex(3))]:
            base = bb_presentation(L, [], [0])
            for S in [[0, 1], [-2, 0, 5], range(-3, 4)]:
                p = bb_presentation(L, [], S)
                self.assertEqual(p, base)
                self.assertEqual(abelianization(p), abelianization(base))

    def test_inclusion_of_height_sets(self):
        small = bb_presentation(cycle(4), [SQUARE_LOOP], [0, 1])
        large = bb_presentation(cycle(4), [SQUARE_LOOP], [0, 1, 2])
        self.assertEqual(presentation_inclusion(small, large), {g: g for g in small.generators})
        with self.assertRaises(PresentationError):
            presentation_inclusion(large, small)

    def test_relators_die_in_the_artin_group(self):
        L = cycle(4)
        alphabet = edge_alphabet(L, [SQUARE_LOOP])
        p = bb_presentation(L, [SQUARE_LOOP], [0, 1, 3])
        self.assertEqual(raag_image_failures(L, p, alphabet), [])
        self.assertEqual(set(height_character(L, alphabet).values()), {0})

    def test_higman_abelianization(self):
        L = higman_flag_complex()
        loops = named_loops()["higman_flag"]["one_cells"]
        p = bb_presentation(L, loops, [0, 1, 3])
        self.assertEqual(p.rank, 336)
        self.assertEqual(abelianization(p), HomologyGroup(96))


class TestArtinWordProblem(unittest.TestCase):
    def test_commuting_pair(self):
        self.assertTrue(RaagWordProblem(2, [(1, 2)]).is_trivial((1, 2, -1, -2)))
        self.assertFalse(RaagWordProblem(2, []).is_trivial((1, 2, -1, -2)))
        self.assertEqual(RaagWordProblem(2, []).normal_form((1, 1, -1)), (1,))


class TestSemidirectProduct(unittest.TestCase):
    def test_deck_group_of_order_two(self):
        group = deck_group_presentation([(1, 0)])
        self.assertEqual(len(group.elements), 2)
        self.assertEqual(group.presentation.relators, ((1, 1),))

    def test_trivial_cover(self):
        L = simplex(2)
        result = g_empty_presentation(L, L, {v: v for v in L.vertices}, [])
        self.assertEqual(abelianization(result.presentation), HomologyGroup(2))
        self.assertEqual(len(result.edge_generators), 3)

    def test_fundamental_domain_skips_orbits_of_faces(self):
        cover = path(3)
        result = g_empty_presentation(path(2), cover, {"1": "1", "2": "2", "3": "1"}, [{"1": "3", "2": "2", "3": "1"}])
        self.assertEqual(result.domain.vertices, ("1", "2"))
        self.assertEqual(result.edge_generators, (("1", "2"),))
        self.assertEqual(abelianization(result.presentation), HomologyGroup(1, (2,)))

    def test_bad_deck_map(self):
        L = simplex(2)
        projection = {v: v for v in L.vertices}
        with self.assertRaises(PresentationError):
            g_empty_presentation(L, L, projection, [{"1": "2", "2": "1", "3": "3"}])
        with self.assertRaises(PresentationError):
            g_empty_presentation(L, L, {"1": "1", "2": "2", "3": "9"}, [])


if __name__ == '__main__':
    unittest.main()
