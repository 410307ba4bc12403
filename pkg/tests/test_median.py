from __future__ import annotations

import unittest

import numpy as np

from medianlab.errors import ResourceLimitError
from medianlab.graphs.cubes import cube_condition, cubes, squares
from medianlab.graphs.graph import complete_bipartite, cycle_graph, grid_graph, hypercube, random_tree
from medianlab.graphs.median import MedianMode, is_median, median_of, triple_intersection


class MedianTests(unittest.TestCase):
    def test_known_median_graphs_pass_exhaustively(self):
        for graph in (hypercube(3), grid_graph([3, 3]), grid_graph([2, 3, 2]), random_tree(12, np.random.default_rng(4))):
            verdict = is_median(graph)
            self.assertTrue(verdict.ok, verdict.reason)
            self.assertIs(verdict.mode, MedianMode.EXHAUSTIVE)

    def test_k23_has_a_two_median_triplet(self):
        verdict = is_median(complete_bipartite(2, 3))
        self.assertFalse(verdict.ok)
        self.assertIsNotNone(verdict.witness)
        self.assertNotEqual(verdict.witness_size, 1)

    def test_hexagon_is_not_median(self):
        verdict = is_median(cycle_graph(6))
        self.assertFalse(verdict.ok)
        self.assertEqual(len(triple_intersection(cycle_graph(6), *verdict.witness)), verdict.witness_size)

    def test_sampled_mode_on_a_grid(self):
        verdict = is_median(grid_graph([4, 4, 3]), MedianMode.SAMPLED, samples=2000, seed=7)
        self.assertTrue(verdict.ok)
        self.assertEqual(verdict.triplets, 2000)

    def test_sampled_mode_refutes_hexagon(self):
        verdict = is_median(cycle_graph(6), "sampled", samples=500, seed=1)
        self.assertFalse(verdict.ok)

    def test_exhaustive_mode_respects_the_cap(self):
        with self.assertRaises(ResourceLimitError):
            is_median(hypercube(3), exhaustive_limit=4)

    def test_median_of_triplets(self):
        square = hypercube(2)
        self.assertEqual(median_of(square, 0, 1, 2), 0)
        self.assertEqual(median_of(square, 1, 2, 3), 3)
        self.assertIsNone(median_of(complete_bipartite(2, 3), 2, 3, 4))


class CubeTests(unittest.TestCase):
    def test_square_and_cube_counts(self):
        cube = hypercube(3)
        self.assertEqual(len(squares(cube)), 6)
        self.assertEqual(cubes(cube, 3), [frozenset(range(8))])

    def test_cube_condition_holds_on_hypercubes(self):
        verdict = cube_condition(hypercube(4))
        self.assertTrue(verdict.ok)
        self.assertGreater(verdict.checked, 0)

    def test_cube_without_a_corner_fails_k0(self):
        broken = hypercube(3).induced(range(7), connected=True)
        verdict = cube_condition(broken, (0,))
        self.assertFalse(verdict.ok)
        self.assertEqual(verdict.dim, 0)
        self.assertEqual(verdict.corner, 0)
        self.assertEqual(len(verdict.witness), 3)

    def test_cube_condition_rejects_other_k(self):
        with self.assertRaises(ValueError):
            cube_condition(hypercube(2), (2,))


if __name__ == "__main__":
    unittest.main()
