#!/usr/bin/env python3
"""
Tests for rule applicability, heuristic ranking and completing the assignment.
"""

import unittest

from core.assignment import Assignment, REASON_COMPLETION, row_to_int
from core.completion import T, compile_completion
from core.decide import (
    Heuristic, HeuristicConfig, NO_APPLICABLE, complete_assignment, decide, find_applicable,
)
from core.ground_model import parse_program
from core.nogood_store import NogoodStore
from core.propagate import PropagationEngine


class Setup:
    """Program, completion, store, assignment and engine for one test."""

    def __init__(self, text: str, heuristic: str = "occ"):
        self.program = parse_program(text)
        nogoods, self.aux = compile_completion(self.program)
        count = self.program.atom_count + self.aux.atom_count
        self.store = NogoodStore(count).build(nogoods)
        self.A = Assignment(count)
        self.engine = PropagationEngine(self.store, self.A)
        self.heuristic = Heuristic(HeuristicConfig.from_flag(heuristic), self.store, self.program, self.aux)

    def atom(self, name: str) -> int:
        return self.program.atoms.id_of(name)


class HeuristicConfigTest(unittest.TestCase):

    def test_aliases(self):
        self.assertEqual(HeuristicConfig.from_flag("jw").kind, "jeroslow_wang")
        self.assertEqual(HeuristicConfig.from_flag("activity").flag, "act")
        with self.assertRaises(ValueError):
            HeuristicConfig.from_flag("vsids")


class FindApplicableTest(unittest.TestCase):

    def test_negative_body_rule_applicable_after_units(self):
        s = Setup("a :- not b.")
        s.engine.initial_propagation()
        self.assertEqual(find_applicable(s.program, s.aux, s.A), [0])

    def test_positive_body_needs_true_t(self):
        s = Setup("a :- b, not c.\nb :- not d.\nd :- not b.")
        s.engine.initial_propagation()
        s.engine.propagate_and_check()
        self.assertNotIn(0, find_applicable(s.program, s.aux, s.A))

    def test_assigned_head_excluded(self):
        s = Setup("a :- not b.\nb :- not a.")
        s.A.assign(T(s.atom("a")), 1)
        self.assertEqual(find_applicable(s.program, s.aux, s.A), [1])

    def test_inconsistent_rule_never_applicable(self):
        s = Setup("a :- c, not c.\nc :- not d.\nd :- not c.")
        self.assertNotIn(0, find_applicable(s.program, s.aux, s.A))


class DecideTest(unittest.TestCase):

    def test_tie_goes_to_lowest_rule(self):
        s = Setup("a :- not b.\nb :- not a.")
        decision = decide(s.program, s.aux, s.A, s.heuristic)
        self.assertTrue(decision.decided)
        self.assertEqual(decision.rule, 0)
        self.assertEqual(decision.literal, T(s.aux[0].b))
        self.assertEqual(decision.level, 2)
        self.assertEqual(row_to_int(s.A.deps[s.aux[0].b]), 0b10)
        self.assertEqual(s.A.frontier.last, [decision.literal])
        self.assertTrue(s.A.is_decision(s.aux[0].b))

    def test_highest_score_wins(self):
        s = Setup("a :- not b.\nb :- not a.")
        s.heuristic.occurrences[s.atom("b")] += 2
        self.assertEqual(decide(s.program, s.aux, s.A, s.heuristic).rule, 1)

    def test_scaling_keeps_choice(self):
        for flag in ("occ", "jw"):
            s = Setup("a :- not b, not c.\nb :- not a.\nc :- not a.\nc :- b.", flag)
            before = decide(s.program, s.aux, s.A, s.heuristic).rule
            t = Setup("a :- not b, not c.\nb :- not a.\nc :- not a.\nc :- b.", flag)
            t.heuristic.occurrences *= 7.5
            t.heuristic.jw *= 7.5
            self.assertEqual(decide(t.program, t.aux, t.A, t.heuristic).rule, before)

    def test_activity_bump_maps_aux_to_head(self):
        s = Setup("a :- not b.\nb :- not a.", "act")
        s.heuristic.bump([s.aux[1].b])
        self.assertEqual(s.heuristic.activity[s.atom("b")], 1.0)
        self.assertEqual(decide(s.program, s.aux, s.A, s.heuristic).rule, 1)
        s.heuristic.decay()
        self.assertAlmostEqual(s.heuristic.activity[s.atom("b")], 0.95)

    def test_no_applicable(self):
        s = Setup("p :- q.\nq :- p.")
        s.engine.initial_propagation()
        self.assertIs(decide(s.program, s.aux, s.A, s.heuristic), NO_APPLICABLE)
        self.assertEqual(s.A.level, 1)


class CompleteAssignmentTest(unittest.TestCase):

    def test_positive_loop_falsified(self):
        s = Setup("p :- q.\nq :- p.")
        s.engine.initial_propagation()
        falsified = complete_assignment(s.program, s.A)
        self.assertEqual(sorted(falsified), sorted([-s.atom("p"), -s.atom("q")]))
        self.assertEqual(s.A.antecedent[s.atom("p")], REASON_COMPLETION)
        outcome = s.engine.propagate_and_check()
        self.assertFalse(outcome.violated)
        self.assertTrue(s.A.is_total())

    def test_nothing_left(self):
        s = Setup("a.")
        s.engine.initial_propagation()
        s.engine.propagate_and_check()
        self.assertEqual(complete_assignment(s.program, s.A), [])

    def test_negative_body_settled_by_propagation(self):
        s = Setup("a :- not b.\nb :- c.")
        s.engine.initial_propagation()
        s.engine.propagate_and_check()
        self.assertTrue(s.A.contains(-s.atom("b")))
        self.assertTrue(s.A.contains(T(s.atom("a"))))
        self.assertEqual(complete_assignment(s.program, s.A), [])


if __name__ == "__main__":
    unittest.main()
