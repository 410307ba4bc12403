from __future__ import annotations

import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

from medianlab.boxes.box import (
    Box,
    BoxHypergraph,
    boxes_intersect,
    check_helly,
    common_point,
    intersection_graph,
    is_triangle_free,
    load_hypergraph,
    save_hypergraph,
    snap_to_grid,
)
from medianlab.errors import RepresentationError, SchemaError
from medianlab.graphs.graph import cycle_graph


def _family() -> BoxHypergraph:
    return BoxHypergraph.build(
        [
            Box.of((0, 2), (0, 2), (0, 2)),
            Box.of((2, 3), ("1/2", 1), (0, 1)),
            Box.of((4, 5), (0, 1), (0, 1)),
        ],
        Box.of((0, 6), (0, 6), (0, 6)),
    )


class BoxTests(unittest.TestCase):
    def test_degenerate_intervals_are_rejected(self):
        with self.assertRaises(ValueError):
            Box.of((1, 1), (0, 1), (0, 1))

    def test_touching_faces_intersect(self):
        first = Box.of((0, 1), (0, 1), (0, 1))
        self.assertTrue(boxes_intersect(first, Box.of((1, 2), (0, 1), (0, 1))))
        self.assertFalse(boxes_intersect(first, Box.of((Fraction(3, 2), 2), (0, 1), (0, 1))))

    def test_common_point(self):
        boxes = [Box.of((0, 2), (0, 2), (0, 2)), Box.of((1, 3), (1, 3), (1, 3))]
        self.assertEqual(common_point(boxes), (1, 1, 1))
        self.assertIsNone(common_point(boxes + [Box.of((5, 6), (0, 1), (0, 1))]))

    def test_intersection_graph(self):
        graph = intersection_graph(_family())
        self.assertEqual(graph.vertices, (0, 1, 2))
        self.assertEqual(graph.edges, ((0, 1),))
        self.assertTrue(is_triangle_free(graph))
        self.assertFalse(is_triangle_free(cycle_graph(3)))

    def test_default_bounding_box_has_margin(self):
        bh = BoxHypergraph.build([Box.of((1, 2), (1, 3), (1, 4))])
        self.assertEqual(bh.bounding.high, (3, 4, 5))

    def test_boxes_outside_bounds_are_rejected(self):
        with self.assertRaises(RepresentationError):
            BoxHypergraph.build([Box.of((0, 2), (0, 1), (0, 1))], Box.of((0, 1), (0, 1), (0, 1)))

    def test_snap_keeps_the_intersection_graph(self):
        family = _family()
        snapped = snap_to_grid(family)
        self.assertTrue(intersection_graph(snapped).same_as(intersection_graph(family)))
        for box in snapped.boxes:
            for value in (*box.low, *box.high):
                self.assertEqual(value.denominator, 1)
        self.assertEqual(snapped.bounding.high, tuple(Fraction(len(p) - 1) for p in family.plane_coords()))

    def test_helly_property_for_boxes(self):
        verdict = check_helly(_family())
        self.assertTrue(verdict.ok)
        self.assertEqual(verdict.checked, 1)

    def test_file_keeps_fractions(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "boxes.json"
            save_hypergraph(path, _family())
            loaded = load_hypergraph(path)
        self.assertEqual(loaded, _family())
        self.assertEqual(loaded.boxes[1].y, (Fraction(1, 2), Fraction(1)))

    def test_malformed_coordinates(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "boxes.json"
            path.write_text('{"boxes": [{"x": [0, "a"], "y": [0, 1], "z": [0, 1]}]}', encoding="utf-8")
            with self.assertRaises(SchemaError):
                load_hypergraph(path)

    def test_empty_family(self):
        graph = intersection_graph(BoxHypergraph.build([], Box.of((0, 1), (0, 1), (0, 1))))
        self.assertEqual(len(graph), 0)


if __name__ == "__main__":
    unittest.main()
