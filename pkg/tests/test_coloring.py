from __future__ import annotations

import unittest

from medianlab.coloring.clique import degeneracy_order, is_clique, max_clique
from medianlab.coloring.models import Budget
from medianlab.coloring.solver import chromatic_number, greedy_coloring, is_proper_coloring, monochromatic_edge
from medianlab.errors import InvalidOrderError, PartialMapError
from medianlab.graphs.graph import Graph, complete_bipartite, complete_graph, cycle_graph, path_graph


def _mycielski_grotzsch() -> Graph:
    """Triangle-free graph on 11 vertices with chromatic number 4."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    shadows = [(5 + i, (i + 1) % 5) for i in range(5)] + [(5 + i, (i - 1) % 5) for i in range(5)]
    apex = [(10, 5 + i) for i in range(5)]
    return Graph.build(range(11), outer + shadows + apex)


class CliqueTests(unittest.TestCase):
    def test_complete_graph(self):
        result = max_clique(complete_graph(5))
        self.assertEqual(result.size, 5)
        self.assertTrue(result.exact)

    def test_triangle_free_graph_has_edge_cliques(self):
        result = max_clique(_mycielski_grotzsch())
        self.assertEqual(result.size, 2)
        self.assertTrue(is_clique(_mycielski_grotzsch(), result.vertices))

    def test_degeneracy_order_lists_every_vertex(self):
        order = degeneracy_order(cycle_graph(6))
        self.assertEqual(sorted(order), list(range(6)))


class ChromaticTests(unittest.TestCase):
    def test_small_exact_values(self):
        self.assertEqual(chromatic_number(cycle_graph(5)).count, 3)
        self.assertEqual(chromatic_number(cycle_graph(6)).count, 2)
        self.assertEqual(chromatic_number(complete_graph(4)).count, 4)
        self.assertEqual(chromatic_number(complete_bipartite(3, 3)).count, 2)

    def test_grotzsch_graph_needs_four(self):
        graph = _mycielski_grotzsch()
        result = chromatic_number(graph)
        self.assertTrue(result.optimal)
        self.assertEqual(result.count, 4)
        self.assertTrue(is_proper_coloring(graph, result.colors))

    def test_empty_and_disconnected_graphs(self):
        empty = Graph.build([], [], connected=False)
        self.assertEqual(chromatic_number(empty).count, 0)
        scattered = Graph.build(range(4), [(0, 1)], connected=False)
        result = chromatic_number(scattered)
        self.assertEqual(result.count, 2)
        self.assertTrue(result.optimal)

    def test_exhausted_budget_keeps_bounds(self):
        result = chromatic_number(cycle_graph(5), Budget(max_nodes=0))
        self.assertFalse(result.optimal)
        self.assertEqual(result.lower_bound, 2)
        self.assertEqual(result.upper_bound, 3)
        self.assertIsNone(result.to_payload()["chi"])

    def test_greedy_follows_the_given_order(self):
        result = greedy_coloring(path_graph(4), [0, 3, 1, 2])
        self.assertEqual(result.count, 3)
        with self.assertRaises(InvalidOrderError):
            greedy_coloring(path_graph(4), [0, 1, 2])

    def test_partial_colourings_are_rejected(self):
        with self.assertRaises(PartialMapError):
            monochromatic_edge(path_graph(3), {0: 0, 1: 1})
        self.assertEqual(monochromatic_edge(path_graph(3), {0: 0, 1: 1, 2: 1}), (1, 2))


if __name__ == "__main__":
    unittest.main()
