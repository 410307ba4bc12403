from __future__ import annotations

import tempfile
import unittest
from pathlib import Path

import numpy as np

from medianlab.boxes.box import Box, BoxHypergraph
from medianlab.coloring.solver import chromatic_number
from medianlab.errors import DomainTooLargeError, PartialMapError, SchemaError
from medianlab.events.bijection import (
    isomorphic_event_structures,
    isomorphic_pointed,
    roundtrip_pointed,
    roundtrip_structure,
)
from medianlab.events.domain import (
    class_signature,
    configurations,
    domain,
    event_structure_from_pointed,
    is_configuration,
    max_out_degree_of_domain,
)
from medianlab.events.generate import random_event_structure
from medianlab.events.labeling import check_nice_labeling, labeling_edge_coloring_bridge
from medianlab.events.structure import (
    EventStructure,
    Labeling,
    PairKind,
    degree,
    load_labeling,
    load_structure,
    pair_relation,
    save_labeling,
    save_structure,
    validate,
)
from medianlab.graphs.amalgam import random_cube_amalgam
from medianlab.graphs.graph import Graph, grid_graph, hypercube, path_graph, random_tree, star_graph
from medianlab.graphs.oriented import orient
from medianlab.graphs.theta import pointed_contact_graph, theta_classes
from medianlab.lifting.lift import lift_hypergraph


GRID_SHAPES = ([3], [4], [2, 2], [3, 2], [3, 3], [4, 2], [2, 2, 2], [3, 2, 2], [5])
SMALL_FAMILIES = (
    [Box.of((1, 2), (1, 2), (1, 2))],
    [Box.of((1, 2), (1, 2), (1, 2)), Box.of((3, 4), (3, 4), (3, 4))],
    [Box.of((1, 2), (1, 2), (1, 2)), Box.of((2, 3), (1, 2), (1, 2))],
)


def median_graph_samples(seed: int = 0) -> list[Graph]:
    """Fifty median graphs: grids, random trees, random cube amalgams and small lifts."""
    rng = np.random.default_rng(seed)
    graphs = [grid_graph(shape) for shape in GRID_SHAPES]
    graphs.extend(random_tree(int(rng.integers(3, 11)), rng) for _ in range(15))
    graphs.extend(random_cube_amalgam(rng, int(rng.integers(2, 5))) for _ in range(23))
    graphs.extend(lift_hypergraph(BoxHypergraph.build(boxes)).graph for boxes in SMALL_FAMILIES)
    return graphs


def three_basepoints(graph: Graph, rng: np.random.Generator) -> list[int]:
    picks = rng.choice(len(graph.vertices), size=min(3, len(graph.vertices)), replace=False)
    return [graph.vertices[int(p)] for p in picks]


class EventStructureTests(unittest.TestCase):
    def test_unknown_events_are_rejected(self):
        with self.assertRaises(SchemaError):
            EventStructure.build([0, 1], causal=[(0, 2)])

    def test_validate_reports_each_axiom(self):
        cycle = EventStructure.build([0, 1], causal=[(0, 1), (1, 0)])
        self.assertEqual(validate(cycle).axiom, "ORDER_CYCLE")
        reflexive = EventStructure.build([0], conflict=[(0, 0)])
        self.assertEqual(validate(reflexive).axiom, "CONFLICT_REFLEXIVE")
        broken = EventStructure.build([0, 1, 2], causal=[(1, 2)], conflict=[(0, 1)])
        verdict = validate(broken)
        self.assertEqual(verdict.axiom, "INHERITANCE_VIOLATION")
        self.assertEqual(verdict.witness, (0, 1, 2))
        self.assertTrue(validate(EventStructure.build([0, 1, 2], [(1, 2)], [(0, 1), (0, 2)])).ok)

    def test_pair_relations_and_minimal_conflict(self):
        es = EventStructure.build([0, 1, 2, 3], causal=[(1, 2)], conflict=[(0, 1), (0, 2)])
        self.assertEqual(pair_relation(es, 1, 2).forward, True)
        self.assertEqual(pair_relation(es, 2, 1).forward, False)
        self.assertTrue(pair_relation(es, 0, 1).minimal)
        self.assertFalse(pair_relation(es, 0, 2).minimal)
        self.assertIs(pair_relation(es, 0, 3).kind, PairKind.CONCURRENT)
        self.assertEqual(es.predecessors(2), frozenset({1}))

    def test_degree_is_the_largest_independent_family(self):
        concurrent = EventStructure.build(range(3))
        self.assertEqual(degree(concurrent), 3)
        chain = EventStructure.build(range(3), causal=[(0, 1), (1, 2)])
        self.assertEqual(degree(chain), 1)
        self.assertEqual(degree(EventStructure.build([])), 0)

    def test_files_keep_structure_and_labels(self):
        es = EventStructure.build([0, 1, 2], causal=[(0, 1)], conflict=[(1, 2)])
        with tempfile.TemporaryDirectory() as tmpdir:
            root = Path(tmpdir)
            save_structure(root / "es.json", es)
            save_labeling(root / "labels.json", Labeling({0: 0, 1: 1, 2: 0}))
            self.assertEqual(load_structure(root / "es.json"), es)
            self.assertEqual(load_labeling(root / "labels.json").labels, {0: 0, 1: 1, 2: 0})


class DomainTests(unittest.TestCase):
    def test_concurrent_pair_gives_a_square(self):
        es = EventStructure.build([0, 1])
        self.assertEqual(len(configurations(es)), 4)
        hasse = domain(es)
        self.assertEqual(hasse.basepoint, 0)
        self.assertEqual(hasse.labels[0], frozenset())
        self.assertEqual(hasse.max_out_degree(), 2)
        self.assertTrue(isomorphic_pointed(hasse, orient(hypercube(2), 0)))

    def test_conflicting_pair_gives_a_path_through_the_bottom(self):
        es = EventStructure.build([0, 1], conflict=[(0, 1)])
        self.assertEqual(configurations(es), [frozenset(), frozenset({0}), frozenset({1})])
        self.assertEqual(max_out_degree_of_domain(es), 2)

    def test_configuration_membership(self):
        es = EventStructure.build([0, 1, 2], causal=[(0, 1)], conflict=[(1, 2)])
        self.assertTrue(is_configuration(es, {0, 1}))
        self.assertFalse(is_configuration(es, {1}))
        self.assertFalse(is_configuration(es, {0, 1, 2}))

    def test_domain_limit(self):
        with self.assertRaises(DomainTooLargeError):
            configurations(EventStructure.build(range(3)), limit=2)

    def test_event_structure_of_a_pointed_path(self):
        path = path_graph(3)
        ordered = event_structure_from_pointed(orient(path, 0), theta_classes(path, 0))
        self.assertEqual(ordered.causal, ((0, 1),))
        self.assertEqual(ordered.conflict, ())
        split = event_structure_from_pointed(orient(path, 1), theta_classes(path, 1))
        self.assertEqual(split.causal, ())
        self.assertEqual(split.conflict, ((0, 1),))

    def test_class_signature_names_crossed_halfspaces(self):
        t = theta_classes(hypercube(2), 0)
        self.assertEqual(class_signature(t, 0), frozenset())
        self.assertEqual(len(class_signature(t, 3)), 2)


class BijectionTests(unittest.TestCase):
    def test_pointed_median_graphs_round_trip(self):
        rng = np.random.default_rng(11)
        graphs = median_graph_samples()
        self.assertEqual(len(graphs), 50)
        for index, graph in enumerate(graphs):
            for basepoint in three_basepoints(graph, rng):
                with self.subTest(graph=index, basepoint=basepoint):
                    verdict = roundtrip_pointed(orient(graph, basepoint), theta_classes(graph, basepoint))
                    self.assertTrue(verdict.ok, verdict.reason)

    def test_random_event_structures_round_trip_with_matching_degree(self):
        rng = np.random.default_rng(3)
        for draw in range(200):
            es = random_event_structure(rng, 1 + draw % 12)
            with self.subTest(draw=draw, events=len(es.events)):
                self.assertTrue(validate(es).ok)
                verdict = roundtrip_structure(es)
                self.assertTrue(verdict.ok, verdict.reason)
                self.assertEqual(degree(es), max_out_degree_of_domain(es))

    def test_isomorphism_ignores_event_names(self):
        first = EventStructure.build([0, 1, 2], causal=[(0, 1)], conflict=[(1, 2)])
        second = EventStructure.build([5, 6, 7], causal=[(7, 6)], conflict=[(6, 5)])
        self.assertTrue(isomorphic_event_structures(first, second))
        third = EventStructure.build([0, 1, 2], causal=[(0, 1)], conflict=[(0, 2)])
        self.assertFalse(isomorphic_event_structures(first, third))


class LabelingTests(unittest.TestCase):
    def test_concurrent_events_need_distinct_labels(self):
        es = EventStructure.build([0, 1])
        self.assertFalse(check_nice_labeling(es, {0: 0, 1: 0}).ok)
        self.assertTrue(check_nice_labeling(es, Labeling({0: 0, 1: 1})).ok)

    def test_causally_ordered_events_may_share_a_label(self):
        es = EventStructure.build([0, 1], causal=[(0, 1)])
        self.assertTrue(check_nice_labeling(es, {0: 0, 1: 0}).ok)

    def test_bridge_agrees_on_a_square(self):
        square = hypercube(2)
        og, t = orient(square, 0), theta_classes(square, 0)
        proper = labeling_edge_coloring_bridge(og, t, {0: 0, 1: 1})
        self.assertTrue(proper.ok)
        clash = labeling_edge_coloring_bridge(og, t, {0: 0, 1: 0})
        self.assertFalse(clash.ok)
        self.assertFalse(clash.determinism)
        self.assertTrue(clash.agree)
        with self.assertRaises(PartialMapError):
            labeling_edge_coloring_bridge(og, t, {0: 0})

    def test_bridge_agrees_on_optimal_and_random_colourings(self):
        rng = np.random.default_rng(17)
        for index, graph in enumerate(median_graph_samples()):
            for basepoint in three_basepoints(graph, rng):
                og, t = orient(graph, basepoint), theta_classes(graph, basepoint)
                k = len(t.classes)
                optimal = chromatic_number(pointed_contact_graph(og, t))
                with self.subTest(graph=index, basepoint=basepoint):
                    verdict = labeling_edge_coloring_bridge(og, t, optimal.colors)
                    self.assertTrue(verdict.ok, verdict.witness)
                    self.assertTrue(verdict.agree)
                    for _ in range(100):
                        palette = int(rng.integers(1, k + 1))
                        coloring = {cls: int(rng.integers(0, palette)) for cls in range(k)}
                        self.assertTrue(labeling_edge_coloring_bridge(og, t, coloring).agree, coloring)


if __name__ == "__main__":
    unittest.main()
