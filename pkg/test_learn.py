#!/usr/bin/env python3
"""
Tests for conflict selection, res and fwd learning and multi-conflict analysis.
"""

import unittest

import numpy as np

from core.assignment import Assignment, REASON_COMPLETION, bits_to_row, row_to_int
from core.completion import make_nogood
from core.learn import (
    SolverError, analyze, decision_nogood, fwd_learning, res_learning, select_conflict,
    select_conflicts,
)
from core.nogood_store import build_store
from core.workers import WorkerPool


def store_of(*nogoods, atoms):
    return build_store([make_nogood(n) for n in nogoods], atom_count=atoms)


class SelectConflictTest(unittest.TestCase):

    def test_shortest_then_lowest_id(self):
        store = store_of([1, 2, 3], [4, 5], [6, 7], atoms=7)
        self.assertEqual(select_conflict([2, 1, 0], store), 0)
        self.assertEqual(select_conflicts([2, 1, 0, 1], store, 2), [0, 1])
        with self.assertRaises(ValueError):
            select_conflict([], store)


class FwdLearningTest(unittest.TestCase):

    def setUp(self):
        # T1 decided at level 2, T2 at level 3, T3 implied at level 3 by {T1, T2, F3}
        self.store = store_of([1, 2, -3], atoms=3)
        self.A = Assignment(3)
        self.A.decide(1)
        self.A.decide(2)
        self.A.assign(3, 3, 0b110, 0)

    def test_decisions_of_the_conflict(self):
        result = fwd_learning((1, 3), self.store, self.A)
        self.assertEqual(result.learned, (1, 2))
        self.assertEqual(result.backjump_level, 2)
        self.assertEqual(result.conflict_level, 3)
        self.assertEqual(result.mode_used, "fwd")

    def test_single_level_backjumps_to_one(self):
        A = Assignment(2)
        A.decide(1)
        A.assign(2, 2, 0b10, 0)
        store = store_of([1, -2], atoms=2)
        result = fwd_learning((1, 2), store, A)
        self.assertEqual(result.learned, (1,))
        self.assertEqual(result.backjump_level, 1)

    def test_level_one_conflict_is_top_level(self):
        A = Assignment(2)
        A.assign(1, 1)
        A.assign(2, 1)
        result = fwd_learning((1, 2), store_of([1, 2], atoms=2), A)
        self.assertTrue(result.top_level)
        self.assertEqual(result.learned, ())

    def test_or_reduce_independent_of_workers(self):
        rng = np.random.default_rng(4)
        rows = rng.integers(0, 2 ** 63, size=(37, 3), dtype=np.uint64)
        expected = np.bitwise_or.reduce(rows, axis=0)
        for workers in (1, 2, 8):
            with WorkerPool(workers) as pool:
                self.assertTrue(np.array_equal(pool.or_reduce(rows), expected))
        with WorkerPool(3) as pool:
            self.assertEqual(row_to_int(pool.or_reduce(rows[:0])), 0)


class ResLearningTest(unittest.TestCase):

    def test_already_asserting(self):
        store = store_of([1, 2, -3], atoms=3)
        A = Assignment(3)
        A.decide(1)
        A.decide(2)
        A.assign(3, 3, 0b110, 0)
        result = res_learning((1, 3), store, A)
        self.assertEqual(result.learned, (1, 3))
        self.assertEqual(result.backjump_level, 2)
        self.assertEqual(result.mode_used, "res")

    def test_resolves_to_first_uip(self):
        store = store_of([3, -5], atoms=5)
        A = Assignment(5)
        A.decide(1)
        A.decide(2)
        A.decide(3)
        A.assign(5, 4, bits_to_row(0b1000, A.deps_words), 0)
        result = res_learning((1, 3, 5), store, A)
        self.assertEqual(result.learned, (1, 3))
        self.assertEqual(result.backjump_level, 2)
        self.assertEqual(result.conflict_level, 4)

    def test_completion_literal_learns_decisions(self):
        A = Assignment(3)
        A.decide(1)
        A.assign(-2, 2, A.branch_bitmap(), REASON_COMPLETION)
        A.assign(-3, 2, A.branch_bitmap(), REASON_COMPLETION)
        result = res_learning((-2, -3), store_of([1, 2], atoms=3), A)
        self.assertEqual(result.learned, (1,))
        self.assertEqual(result.backjump_level, 1)

    def test_missing_antecedent_raises(self):
        A = Assignment(3)
        A.decide(1)
        A.assign(3, 2)
        with self.assertRaises(SolverError):
            res_learning((1, 3), store_of([1, 2], atoms=3), A)

    def test_level_one_is_top_level(self):
        A = Assignment(2)
        A.assign(1, 1)
        A.assign(-2, 1)
        self.assertTrue(res_learning((1, -2), store_of([1, 2], atoms=2), A).top_level)


class DecisionNogoodTest(unittest.TestCase):

    def test_all_decisions(self):
        A = Assignment(3)
        A.decide(-1)
        A.decide(3)
        result = decision_nogood(A, "fwd")
        self.assertEqual(result.learned, (-1, 3))
        self.assertEqual(result.backjump_level, 2)

    def test_at_level_one(self):
        self.assertTrue(decision_nogood(Assignment(1), "res").top_level)


class AnalyzeTest(unittest.TestCase):

    def setUp(self):
        self.store = store_of([1, 3], [2, 3], atoms=3)
        self.A = Assignment(3)
        for atom in (1, 2, 3):
            self.A.decide(atom)

    def test_fanout_takes_lowest_backjump(self):
        outcome = analyze([0, 1], "fwd", self.store, self.A, fanout=2)
        self.assertEqual(len(outcome.results), 2)
        self.assertEqual(sorted(r.backjump_level for r in outcome.results), [2, 3])
        self.assertEqual(outcome.backjump_level, 2)

    def test_single_conflict_by_default(self):
        outcome = analyze([1, 0], "fwd", self.store, self.A)
        self.assertEqual(len(outcome.results), 1)
        self.assertEqual(outcome.results[0].conflict_id, 0)

    def test_res_ignores_fanout(self):
        outcome = analyze([0, 1], "res", self.store, self.A, fanout=4)
        self.assertEqual(len(outcome.results), 1)

    def test_unknown_mode(self):
        with self.assertRaises(ValueError):
            analyze([0], "lookahead", self.store, self.A)

    def test_capacity_overflow_falls_back_per_conflict(self):
        store = store_of([1, 65], [2, 3], atoms=65)
        A = Assignment(65, deps_words=1)
        for atom in range(1, 66):
            A.decide(atom)
        self.assertEqual(A.level, 66)
        outcome = analyze([0, 1], "fwd", store, A, fanout=2)
        modes = {r.conflict_id: r.mode_used for r in outcome.results}
        self.assertEqual(modes, {0: "res", 1: "fwd"})
        self.assertEqual(outcome.backjump_level, 2)


if __name__ == "__main__":
    unittest.main()
