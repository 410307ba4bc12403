from __future__ import annotations

import json
import tempfile
import unittest
from pathlib import Path

import numpy as np

from medianlab.boxes.box import Box, BoxHypergraph
from medianlab.errors import RepresentationError, ResourceLimitError, SchemaError
from medianlab.graphs.graph import grid_graph, hypercube
from medianlab.graphs.median import MedianMode, is_median
from medianlab.lifting.grid import box_index_ranges, build_grid, check_cell_representation
from medianlab.lifting.lemmas import (
    certify_amalgam_sequence,
    verify_class_census,
    verify_clique_identity,
    verify_cube_condition,
    verify_lemma_coloring,
    verify_lemma_crossing,
    verify_lemma_degree,
    verify_lemma_intersection,
    verify_median,
    verify_orientation,
)
from medianlab.lifting.lift import (
    ThetaKind,
    lift,
    lift_burling,
    lift_hypergraph,
    lifted_dot,
    load_lifted,
    save_lifted,
)


def _cube(low: int, high: int) -> Box:
    return Box.of((low, high), (low, high), (low, high))


class GridTests(unittest.TestCase):
    def test_grid_ids_and_points(self):
        bh = BoxHypergraph.build([_cube(1, 2)], _cube(0, 3))
        gc = build_grid(bh)
        self.assertEqual(gc.dims, (4, 4, 4))
        self.assertEqual(gc.vertex_at(1, 2, 3), 27)
        self.assertEqual(gc.point_of(27), (1, 2, 3))
        self.assertEqual(box_index_ranges(gc, bh), [((1, 2), (1, 2), (1, 2))])
        self.assertTrue(check_cell_representation(gc, bh).ok)

    def test_foreign_box_is_not_cellular(self):
        gc = build_grid(BoxHypergraph.build([], _cube(0, 3)))
        verdict = check_cell_representation(gc, BoxHypergraph.build([_cube(1, 2)], _cube(0, 3)))
        self.assertFalse(verdict.ok)
        self.assertEqual((verdict.box, verdict.axis), (0, 0))


class SmallLiftTests(unittest.TestCase):
    def test_empty_family_lifts_to_the_grid(self):
        lg = lift_hypergraph(BoxHypergraph.build([], _cube(0, 1)))
        self.assertTrue(lg.graph.same_as(hypercube(3)))
        self.assertEqual(len(lg.theta.classes), 3)
        self.assertEqual((lg.alpha, lg.beta), (0, 7))
        self.assertTrue(verify_class_census(lg).ok)

    def test_box_filling_the_bounds_gives_a_four_cube(self):
        lg = lift_hypergraph(BoxHypergraph.build([_cube(0, 1)], _cube(0, 1)))
        self.assertEqual(len(lg.graph), 16)
        self.assertEqual(len(lg.graph.edges), 32)
        self.assertEqual(len(lg.theta.classes), 4)
        self.assertEqual(lg.theta_labels[lg.box_classes[0]].kind, ThetaKind.LIFTED)
        self.assertTrue(is_median(lg.graph).ok)

    def test_inner_box(self):
        lg = lift_hypergraph(BoxHypergraph.build([_cube(1, 2)], _cube(0, 3)))
        self.assertEqual(lg.grid.dims, (4, 4, 4))
        self.assertEqual(len(lg.graph), 72)
        self.assertEqual(sorted(lg.copies[0]), sorted(lg.subgrids[0]))
        self.assertTrue(lg.is_copy(64))
        self.assertFalse(lg.is_copy(0))
        self.assertEqual(lg.class_names()[lg.box_classes[0]], "Θ0")

    def test_disjoint_boxes_add_one_class_each(self):
        lg = lift_hypergraph(BoxHypergraph.build([_cube(1, 2), _cube(3, 4)], _cube(0, 5)))
        self.assertEqual(len(lg.theta.classes), 15 + 2)
        census = verify_class_census(lg)
        self.assertTrue(census.ok, census.detail)
        self.assertEqual(census.measured["grid"], 15)
        self.assertTrue(verify_lemma_intersection(lg).ok)
        self.assertTrue(verify_lemma_crossing(lg).ok)
        self.assertTrue(verify_median(lg).ok)

    def test_touching_boxes_osculate_at_alpha(self):
        lg = lift_hypergraph(BoxHypergraph.build([Box.of((0, 1), (0, 1), (0, 1)), Box.of((1, 2), (0, 1), (0, 1))]))
        self.assertTrue(verify_lemma_intersection(lg).ok)
        self.assertTrue(verify_lemma_crossing(lg).ok)
        self.assertTrue(certify_amalgam_sequence(lg).ok)
        degree = verify_lemma_degree(lg)
        self.assertTrue(degree.ok, degree.detail)
        self.assertEqual(degree.measured["omega"], 2)

    def test_grid_mismatch_and_size_limit(self):
        bh = BoxHypergraph.build([_cube(1, 2)], _cube(0, 3))
        other = build_grid(BoxHypergraph.build([], _cube(0, 3)))
        with self.assertRaises(RepresentationError):
            lift(other, bh)
        with self.assertRaises(ResourceLimitError):
            lift(build_grid(bh), bh, max_vertices=71)

    def test_grid_graph_is_the_lift_skeleton(self):
        lg = lift_hypergraph(BoxHypergraph.build([_cube(1, 2)], _cube(0, 3)))
        skeleton = lg.graph.induced(range(64), connected=True)
        self.assertTrue(skeleton.same_as(grid_graph([4, 4, 4])))


class FirstBurlingLiftTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.lg = lift_burling(1)

    def test_structure(self):
        lg = self.lg
        self.assertEqual(len(lg.subgrids), 3)
        self.assertEqual(lg.orientation.out_degree(lg.alpha), 3)
        self.assertEqual(lg.orientation.in_degree(lg.alpha), 0)

    def test_lemmas_hold(self):
        lg = self.lg
        for verdict in (
            verify_class_census(lg),
            verify_orientation(lg),
            verify_lemma_crossing(lg),
            verify_lemma_intersection(lg),
            verify_clique_identity(lg),
            certify_amalgam_sequence(lg),
            verify_median(lg, MedianMode.EXHAUSTIVE, exhaustive_limit=len(lg.graph)),
        ):
            self.assertTrue(verdict.ok, f"{verdict.name}: {verdict.detail}")

    def test_degree_bounds(self):
        verdict = verify_lemma_degree(self.lg)
        self.assertTrue(verdict.ok)
        self.assertLessEqual(verdict.measured["max_out_degree"], 5)
        self.assertLessEqual(verdict.measured["max_degree"], 8)

    def test_pointed_contact_needs_two_colours(self):
        verdict = verify_lemma_coloring(self.lg)
        self.assertTrue(verdict.ok, verdict.detail)
        self.assertFalse(verdict.exhausted)
        self.assertGreaterEqual(verdict.measured["pointed"]["chi"], 2)
        self.assertEqual(verdict.measured["pointed_lifted"]["chi"], verdict.measured["intersection"]["chi"])

    def test_sampled_median_uses_the_amalgam_certificate(self):
        verdict = verify_median(self.lg, MedianMode.SAMPLED, samples=5000, seed=2)
        self.assertTrue(verdict.ok, verdict.detail)
        self.assertIn("gated gluings", verdict.detail)

    def test_cube_condition(self):
        self.assertTrue(verify_cube_condition(self.lg).ok)

    def test_file_round_trip_and_tampering(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "lift.json"
            save_lifted(path, self.lg)
            loaded = load_lifted(path)
            self.assertTrue(loaded.graph.same_as(self.lg.graph))
            payload = json.loads(path.read_text(encoding="utf-8"))
            payload["theta_labels"]["0"] = {"kind": "GRID", "axis": 2, "plane": 99}
            path.write_text(json.dumps(payload), encoding="utf-8")
            with self.assertRaises(SchemaError):
                load_lifted(path)

    def test_dot_highlights_box_classes(self):
        text = lifted_dot(self.lg)
        self.assertTrue(text.startswith("graph lift {"))
        self.assertIn('label="Θ0"', text)


class SecondBurlingLiftTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.lg = lift_burling(2)

    def test_degree_bounds(self):
        verdict = verify_lemma_degree(self.lg)
        self.assertTrue(verdict.ok, verdict.detail)
        self.assertLessEqual(verdict.measured["max_out_degree"], 5)
        self.assertLessEqual(verdict.measured["max_degree"], 8)

    def test_box_classes_reproduce_the_family(self):
        self.assertTrue(verify_class_census(self.lg).ok)
        self.assertTrue(verify_lemma_crossing(self.lg).ok)
        self.assertTrue(verify_lemma_intersection(self.lg).ok)

    def test_pointed_contact_needs_three_colours(self):
        verdict = verify_lemma_coloring(self.lg)
        self.assertTrue(verdict.ok, verdict.detail)
        self.assertGreaterEqual(verdict.measured["pointed_lifted"]["chi"], 3)
        self.assertGreaterEqual(verdict.measured["pointed"]["chi"], 3)


class RandomFamilyTests(unittest.TestCase):
    def test_lifts_of_random_families_keep_their_structure(self):
        rng = np.random.default_rng(23)
        for draw in range(20):
            boxes = []
            for _ in range(int(rng.integers(1, 7))):
                sides = []
                for _axis in range(3):
                    low = int(rng.integers(0, 3))
                    sides.append((low, int(rng.integers(low + 1, 4))))
                boxes.append(Box.of(*sides))
            lg = lift_hypergraph(BoxHypergraph.build(boxes))
            with self.subTest(draw=draw, boxes=len(boxes)):
                self.assertTrue(verify_lemma_intersection(lg).ok)
                self.assertTrue(verify_lemma_crossing(lg).ok)
                self.assertTrue(verify_median(lg, MedianMode.SAMPLED, samples=2000, seed=draw).ok)
                self.assertTrue(verify_cube_condition(lg).ok)


if __name__ == "__main__":
    unittest.main()
