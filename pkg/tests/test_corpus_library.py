import os
import tempfile
import unittest

from complexes import SimplicialComplex, cycle, named_complexes, named_loops, octahedron
from corpus_library import MANIFEST, CorpusLibrary, named_presentations
from formats import PresentationFile, read_json
from presentations import Presentation

HERE = os.path.dirname(os.path.abspath(__file__))
CORPUS = os.path.join(os.path.dirname(HERE), "corpus")


class TestCorpusLibrary(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.library = CorpusLibrary(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def test_add_get_remove(self):
        self.library.add("ring", cycle(5), {"boundary": [["1", "2", "3", "4", "5"]]})
        self.assertTrue(os.path.exists(self.library.path("ring")))
        reloaded = CorpusLibrary(self.tmp.name)
        self.assertEqual(reloaded.get("ring"), cycle(5))
        self.assertEqual(reloaded.loops("ring"), {"boundary": [["1", "2", "3", "4", "5"]]})
        reloaded.remove("ring")
        self.assertFalse(os.path.exists(reloaded.path("ring")))
        with self.assertRaises(FileNotFoundError):
            reloaded.get("ring")

    def test_generated_entries(self):
        self.assertEqual(self.library.get("octahedron"), octahedron())
        self.assertEqual(self.library.loops("square"), {"boundary": [["1", "2", "3", "4"]]})
        self.assertIsInstance(self.library.get_file("z2"), PresentationFile)
        self.assertEqual(self.library.get("dihedral6"), named_presentations()["dihedral6"]())
        self.assertIn("higman_flag", self.library.list_entries())
        self.assertFalse(os.path.exists(self.library.path("octahedron")))

    def test_presentation_entry(self):
        self.library.add("c3", Presentation(("a",), ((1, 1, 1),)))
        reloaded = CorpusLibrary(self.tmp.name)
        self.assertIsInstance(reloaded.get_file("c3"), PresentationFile)
        self.assertEqual(reloaded.get("c3").relators, ((1, 1, 1),))

    def test_missing_entry(self):
        with self.assertRaises(FileNotFoundError):
            self.library.get("no_such_complex")

    def test_manifest(self):
        with self.assertRaises(FileNotFoundError):
            self.library.verify_manifest()
        self.library.add("ring", cycle(5))
        manifest = self.library.freeze()
        self.assertIn("ring", manifest)
        self.assertIn("square", manifest)
        self.assertTrue(os.path.exists(os.path.join(self.tmp.name, MANIFEST)))
        self.assertEqual(self.library.verify_manifest(), [])
        with open(self.library.path("ring"), "a") as f:
            f.write("\n")
        self.assertEqual(self.library.verify_manifest(), ["ring"])

    def test_populate_keeps_existing_files(self):
        self.library.add("square", cycle(4))
        written = self.library.populate()
        self.assertNotIn("square", written)
        self.assertIn("z2", written)
        self.assertEqual(self.library.loops("square"), {})


class TestShippedCorpus(unittest.TestCase):
    def setUp(self):
        self.library = CorpusLibrary(CORPUS)

    def test_every_named_complex_is_frozen(self):
        manifest = read_json(os.path.join(CORPUS, MANIFEST))
        for name in named_complexes():
            self.assertIn(name, manifest)
            self.assertTrue(os.path.exists(self.library.path(name)), name)
        self.assertEqual(self.library.verify_manifest(), [])

    def test_stored_complexes_match_builders(self):
        for name, build in named_complexes().items():
            stored, built = self.library.get(name), build()
            if isinstance(built, SimplicialComplex):
                self.assertEqual(stored, built, name)
            else:
                self.assertEqual(stored.f_vector(), built.f_vector(), name)
        for name, loops in named_loops().items():
            self.assertEqual(self.library.loops(name), loops, name)


if __name__ == '__main__':
    unittest.main()
