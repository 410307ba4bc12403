from __future__ import annotations

import unittest

from medianlab.errors import ResourceLimitError
from medianlab.lifting.chain import build_chain, verify_chain


class ChainTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.chain = build_chain(2, workers=2)

    def test_single_glued_corner(self):
        chain = self.chain
        self.assertEqual(len(chain.joints), 1)
        self.assertEqual(chain.articulation_points(), chain.joints)
        self.assertEqual(chain.orientation.out_degree(chain.joints[0]), 3)
        self.assertEqual(chain.orientation.max_out_degree(), 5)

    def test_blocks_keep_their_ids_and_sizes(self):
        chain = self.chain
        first, second = chain.blocks
        self.assertEqual(chain.alpha, first.alpha)
        self.assertEqual(len(chain.graph), len(first.graph) + len(second.graph) - 1)
        self.assertEqual(chain.maps[1][second.alpha], chain.joints[0])

    def test_class_map_is_a_partition(self):
        chain = self.chain
        images = [set(chain.class_map(t).values()) for t in range(2)]
        self.assertFalse(images[0] & images[1])
        self.assertEqual(len(images[0]) + len(images[1]), len(chain.theta.classes))

    def test_verdict(self):
        verdict = verify_chain(self.chain)
        self.assertTrue(verdict.ok, verdict.detail)
        self.assertEqual(verdict.measured["articulation_points"], 1)
        self.assertEqual(verdict.measured["articulation_out_degree"], [3])

    def test_single_block_has_no_articulation_point(self):
        chain = build_chain(1)
        self.assertEqual(chain.articulation_points(), ())
        self.assertEqual(chain.joints, ())

    def test_limits(self):
        with self.assertRaises(ResourceLimitError):
            build_chain(3)
        with self.assertRaises(ValueError):
            build_chain(0)


if __name__ == "__main__":
    unittest.main()
