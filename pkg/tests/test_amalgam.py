from __future__ import annotations

import unittest

import numpy as np

from medianlab.errors import InvalidGraphError, NotGatedError, PartialMapError
from medianlab.graphs.amalgam import gated_amalgam, glue, random_cube_amalgam
from medianlab.graphs.export import to_dot
from medianlab.graphs.graph import hypercube, path_graph
from medianlab.graphs.median import is_median
from medianlab.graphs.theta import theta_classes


class AmalgamTests(unittest.TestCase):
    def test_glue_renumbers_the_second_graph(self):
        glued, mapping = glue(path_graph(2), path_graph(2), {1: 0})
        self.assertEqual(mapping, {0: 1, 1: 2})
        self.assertEqual(glued.edges, ((0, 1), (1, 2)))

    def test_glue_needs_an_injective_identification(self):
        with self.assertRaises(PartialMapError):
            glue(path_graph(3), path_graph(2), {0: 0, 2: 0})

    def test_two_squares_along_an_edge(self):
        glued = gated_amalgam(hypercube(2), hypercube(2), {2: 0, 3: 1})
        self.assertEqual(len(glued), 6)
        self.assertEqual(len(glued.edges), 7)
        self.assertTrue(is_median(glued).ok)

    def test_diagonal_is_not_gated(self):
        with self.assertRaises(NotGatedError) as caught:
            gated_amalgam(hypercube(2), hypercube(2), {0: 0, 3: 3})
        self.assertEqual(caught.exception.side, "g1")

    def test_mismatched_common_subgraphs(self):
        with self.assertRaises(InvalidGraphError):
            gated_amalgam(hypercube(2), hypercube(2), {0: 0, 1: 3})

    def test_empty_identification(self):
        with self.assertRaises(InvalidGraphError):
            gated_amalgam(hypercube(2), hypercube(2), {})

    def test_random_amalgams_are_median(self):
        rng = np.random.default_rng(11)
        for _ in range(5):
            graph = random_cube_amalgam(rng, 4)
            self.assertTrue(is_median(graph).ok)


class DotExportTests(unittest.TestCase):
    def test_classes_label_edges(self):
        cube = hypercube(2)
        text = to_dot(cube, theta_classes(cube, 0), class_names={0: "a", 1: "b"}, highlight=[1])
        self.assertTrue(text.startswith("graph G {"))
        self.assertIn('label="a"', text)
        self.assertIn("penwidth=2", text)
        self.assertIn("shape=doublecircle", text)


if __name__ == "__main__":
    unittest.main()
