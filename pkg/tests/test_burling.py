from __future__ import annotations

import unittest

from medianlab.boxes.box import check_helly, intersection_graph, is_triangle_free, snap_to_grid
from medianlab.boxes.burling import UNIT, base_level, burling_family, family_sizes, next_level
from medianlab.coloring.solver import chromatic_number
from medianlab.errors import ResourceLimitError


class BurlingFamilyTests(unittest.TestCase):
    def test_size_recursion(self):
        boxes = [size for size, _ in family_sizes(4)]
        self.assertEqual(boxes, [1, 3, 13, 181, 39733])

    def test_levels_match_the_recursion(self):
        level = base_level()
        for expected_boxes, expected_probes in family_sizes(2):
            self.assertEqual(len(level.boxes), expected_boxes)
            self.assertEqual(len(level.probes), expected_probes)
            level = next_level(level)

    def test_first_family(self):
        family = burling_family(1)
        graph = intersection_graph(family)
        self.assertEqual(len(family), 3)
        self.assertEqual(len(graph.edges), 1)
        self.assertEqual(family.bounding, UNIT)
        self.assertEqual(chromatic_number(graph).count, 2)

    def test_second_family_needs_three_colours(self):
        family = burling_family(2)
        graph = intersection_graph(family)
        self.assertEqual(len(family), 13)
        self.assertTrue(is_triangle_free(graph))
        self.assertEqual(chromatic_number(graph).count, 3)
        self.assertTrue(check_helly(family).ok)

    def test_snapped_family_keeps_its_graph(self):
        family = burling_family(2)
        snapped = snap_to_grid(family)
        self.assertEqual(snapped.probes, ())
        self.assertTrue(intersection_graph(snapped).same_as(intersection_graph(family)))

    def test_probes_stay_inside_the_unit_cube(self):
        family = burling_family(2)
        self.assertEqual(len(family.probes), 8)
        for probe in family.probes:
            self.assertTrue(UNIT.contains(probe))

    def test_limits(self):
        with self.assertRaises(ResourceLimitError):
            burling_family(4)
        with self.assertRaises(ResourceLimitError):
            burling_family(2, max_n=1)
        with self.assertRaises(ValueError):
            burling_family(0)


if __name__ == "__main__":
    unittest.main()
