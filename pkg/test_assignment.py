#!/usr/bin/env python3
"""
Tests for the assignment: signed level cells, trail, backjumping and Deps bitmaps.
"""

import random
import unittest

import numpy as np

from core.assignment import (
    Assignment, AssignResult, bits_to_row, is_total, row_to_int, set_levels,
)


class AssignTest(unittest.TestCase):

    def setUp(self):
        self.A = Assignment(4, deps_words=2)
        self.A.decide(4)  # level 2

    def test_newly_set_agreed_conflict(self):
        A = self.A
        self.assertIs(A.assign(1, 2, 0b10), AssignResult.NEWLY_SET)
        self.assertEqual(A.cells[1], 2)
        self.assertIs(A.assign(1, 2, 0b111), AssignResult.AGREED)
        self.assertEqual(row_to_int(A.deps[1]), 0b10)
        self.assertIs(A.assign(-1, 2), AssignResult.CONFLICT)
        self.assertEqual(A.cells[1], 2)

    def test_false_encoding(self):
        self.A.assign(-2, 1)
        self.assertEqual(self.A.cells[2], -1)
        self.assertEqual(self.A.value(-2), 1)
        self.assertEqual(self.A.value(2), -1)
        self.assertEqual(self.A.value(3), 0)

    def test_level_out_of_range(self):
        with self.assertRaises(ValueError):
            self.A.assign(1, 3)
        with self.assertRaises(ValueError):
            self.A.assign(1, 0)

    def test_decision_deps_single_bit(self):
        A = self.A
        A.decide(3)
        self.assertEqual(A.level, 3)
        self.assertEqual(row_to_int(A.deps[4]), 1 << 1)
        self.assertEqual(row_to_int(A.deps[3]), 1 << 2)
        self.assertEqual(A.decisions(), [4, 3])
        self.assertTrue(A.is_decision(3))

    def test_deps_rows_span_words(self):
        value = (1 << 70) | 5
        self.assertEqual(row_to_int(bits_to_row(value, 2)), value)
        self.assertEqual(set_levels(bits_to_row(value, 2)), [1, 3, 71])


class BackjumpTest(unittest.TestCase):

    def test_truncates_above_target(self):
        A = Assignment(3)
        A.assign(1, 1)
        A.decide(2)
        A.decide(-3)
        A.backjump(1)
        self.assertEqual(A.trail, [1])
        self.assertEqual(A.cells, [0, 1, 0, 0])
        self.assertEqual(A.level_decisions, {})
        self.assertFalse(A.is_total())
        self.assertEqual(int(A.deps[2].sum()), 0)

    def test_target_must_be_below_level(self):
        A = Assignment(2)
        A.decide(1)
        with self.assertRaises(ValueError):
            A.backjump(2)
        with self.assertRaises(ValueError):
            A.backjump(0)

    def test_frontier_cleared(self):
        A = Assignment(2)
        A.decide(1)
        A.frontier.last.append(1)
        A.backjump(1)
        self.assertEqual(A.frontier.last, [])

    def test_random_audit(self):
        rng = random.Random(1)
        A = Assignment(30)
        free = list(range(1, 31))
        rng.shuffle(free)
        for step in range(200):
            if free and rng.random() < 0.6:
                atom = free.pop()
                lit = atom if rng.random() < 0.5 else -atom
                if rng.random() < 0.3:
                    A.decide(lit)
                else:
                    A.assign(lit, A.level, A.branch_bitmap())
            elif A.level > 1:
                target = rng.randint(1, A.level - 1)
                A.backjump(target)
                free = [p for p in range(1, 31) if not A.is_assigned(p)]
                rng.shuffle(free)
            self.assertEqual(A.check_coherence(), [])
            for p in range(1, 31):
                if A.is_assigned(p):
                    for level in set_levels(A.deps[p]):
                        self.assertIn(level, A.level_decisions)


class TotalTest(unittest.TestCase):

    def test_is_total(self):
        A = Assignment(2)
        self.assertFalse(is_total(A))
        A.assign(1, 1)
        A.assign(-2, 1)
        self.assertTrue(is_total(A))
        self.assertTrue(is_total(Assignment(0)))

    def test_branch_bitmap(self):
        A = Assignment(3)
        A.decide(1)
        A.decide(2)
        self.assertEqual(row_to_int(A.branch_bitmap()), 0b110)
        self.assertTrue(np.array_equal(A.decision_bitmap(3), bits_to_row(0b100, A.deps_words)))


if __name__ == "__main__":
    unittest.main()
