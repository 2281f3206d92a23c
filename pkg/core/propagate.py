"""
Propagation for aspine.
Initial unit propagation and the frontier-driven propagate-and-check loop:
each pass visits the nogoods touched by the literals assigned in the previous
pass (binary, then ternary, then longer), maintains the two watches, assigns
unit consequences with their Deps bitmaps and collects violated nogoods.
"""

from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .assignment import Assignment, AssignResult, REASON_NONE
from .completion import SignedLiteral
from .nogood_store import LENGTH_CLASSES, NogoodStore
from .workers import WorkerPool


@dataclass
class PropagationOutcome:
    violated: bool = False
    conflicts: List[int] = field(default_factory=list)
    propagations_count: int = 0


@dataclass
class PropagationCounters:
    propagations: int = 0
    passes: int = 0
    watch_replacements: int = 0
    conflicts: int = 0


def mk_dl_bitmap(delta: Sequence[SignedLiteral], w: SignedLiteral, assignment: Assignment) -> np.ndarray:
    """OR of Deps over the literals of delta other than w, skipping level-1 ones."""
    w_atom = w if w > 0 else -w
    rows = []
    for x in delta:
        atom = x if x > 0 else -x
        if atom != w_atom and assignment.level_of(atom) > 1:
            rows.append(atom)
    if not rows:
        return np.zeros(assignment.deps_words, dtype=np.uint64)
    return np.bitwise_or.reduce(assignment.deps[rows], axis=0)


class PropagationEngine:
    """Propagation over one store and one assignment, optionally across a worker pool."""

    def __init__(self, store: NogoodStore, assignment: Assignment, pool: Optional[WorkerPool] = None):
        self.store = store
        self.assignment = assignment
        self.pool = pool or WorkerPool(1)
        self.counters = PropagationCounters()

    def initial_propagation(self) -> PropagationOutcome:
        """Assign the complement of every static and learned unit at level 1."""
        A = self.assignment
        outcome = PropagationOutcome()
        units = [(lit, REASON_NONE) for lit in self.store.units]
        units += [(self.store.literals(n)[0], n) for n in self.store.learned_units]
        for lit, reason in units:
            result = A.assign(-lit, 1, None, reason)
            if result is AssignResult.NEWLY_SET:
                A.frontier.last.append(-lit)
                outcome.propagations_count += 1
            elif result is AssignResult.CONFLICT:
                outcome.violated = True
                if reason >= 0 and reason not in outcome.conflicts:
                    outcome.conflicts.append(reason)
        self.counters.propagations += outcome.propagations_count
        return outcome

    def propagate_and_check(self, pending: Iterable[int] = ()) -> PropagationOutcome:
        """
        Run passes until fixpoint or violation.

        Args:
            pending: Nogood ids to evaluate in the first pass regardless of the
                frontier (freshly learned nogoods after a backjump)

        Returns:
            The outcome; all conflicts of the violating pass are collected
        """
        A = self.assignment
        outcome = PropagationOutcome()
        extra = list(pending)
        while A.frontier.last or extra:
            items = self._work_items(A.frontier.last, extra)
            extra = []
            self.counters.passes += 1
            results = self.pool.map_partitions(self._run_slice, items)
            next_lits: List[SignedLiteral] = []
            conflicts = set()
            for lits, found, count in results:
                next_lits.extend(lits)
                conflicts.update(found)
                outcome.propagations_count += count
            A.frontier.next = next_lits
            A.frontier.swap()
            if conflicts:
                outcome.violated = True
                outcome.conflicts = sorted(conflicts)
                break
        self.counters.propagations += outcome.propagations_count
        self.counters.conflicts += len(outcome.conflicts)
        return outcome

    def _work_items(self, last: Sequence[SignedLiteral], extra: Sequence[int]) -> List[int]:
        store = self.store
        seen = set()
        items = []
        for nogood_id in extra:
            if nogood_id not in seen:
                seen.add(nogood_id)
                items.append(nogood_id)
        for cls in LENGTH_CLASSES:
            for lit in last:
                for nogood_id in store.occurrences(cls, lit):
                    if nogood_id not in seen:
                        seen.add(nogood_id)
                        items.append(nogood_id)
        return items

    def _run_slice(self, nogood_ids: Sequence[int]) -> Tuple[List[SignedLiteral], List[int], int]:
        assigned: List[SignedLiteral] = []
        conflicts: List[int] = []
        for nogood_id in nogood_ids:
            self._check(nogood_id, assigned, conflicts)
        return assigned, conflicts, len(assigned)

    def _substitute(self, literals, w1: SignedLiteral, w2: SignedLiteral) -> SignedLiteral:
        """Lowest-index literal other than the watches that is not contained in A."""
        value = self.assignment.value
        for lit in literals:
            if lit != w1 and lit != w2 and value(lit) <= 0:
                return lit
        return 0

    def _check(self, nogood_id: int, assigned: List[SignedLiteral], conflicts: List[int]):
        store = self.store
        A = self.assignment
        literals = store.literals(nogood_id)

        if len(literals) == 1:
            lit = literals[0]
            status = A.value(lit)
            if status > 0:
                conflicts.append(nogood_id)
            elif status == 0:
                self._propagate(nogood_id, literals, -lit, assigned, conflicts)
            return

        w1, w2 = store.watch1[nogood_id], store.watch2[nogood_id]
        s1, s2 = A.value(w1), A.value(w2)
        if s1 < 0 or s2 < 0:
            return  # satisfied
        if s1 > 0:
            sub = self._substitute(literals, w1, w2)
            if sub:
                w1, s1 = sub, A.value(sub)
                self.counters.watch_replacements += 1
        if s1 >= 0 and s2 > 0:
            sub = self._substitute(literals, w1, w2)
            if sub:
                w2, s2 = sub, A.value(sub)
                self.counters.watch_replacements += 1
        store.watch1[nogood_id], store.watch2[nogood_id] = w1, w2
        if s1 < 0 or s2 < 0:
            return
        if s1 > 0 and s2 > 0:
            conflicts.append(nogood_id)
        elif s1 > 0:
            self._propagate(nogood_id, literals, -w2, assigned, conflicts)
        elif s2 > 0:
            self._propagate(nogood_id, literals, -w1, assigned, conflicts)

    def _propagate(self, nogood_id: int, literals, lit: SignedLiteral,
                   assigned: List[SignedLiteral], conflicts: List[int]):
        A = self.assignment
        deps = mk_dl_bitmap(literals, lit, A)
        result = A.assign(lit, A.level, deps, nogood_id)
        if result is AssignResult.NEWLY_SET:
            assigned.append(lit)
        elif result is AssignResult.CONFLICT:
            conflicts.append(nogood_id)


def full_scan(store: NogoodStore, assignment: Assignment) -> Tuple[List[int], List[int]]:
    """(unit ids, violated ids) by scanning every nogood; used by audits."""
    units, violated = [], []
    for nogood_id in range(len(store)):
        values = [assignment.value(lit) for lit in store.literals(nogood_id)]
        if any(v < 0 for v in values):
            continue
        unassigned = values.count(0)
        if unassigned == 0:
            violated.append(nogood_id)
        elif unassigned == 1:
            units.append(nogood_id)
    return units, violated


def check_watch_discipline(store: NogoodStore, assignment: Assignment) -> List[int]:
    """Ids of nogoods whose watches are neither satisfied nor both unassigned."""
    broken = []
    for nogood_id in range(len(store)):
        if store.length(nogood_id) < 2:
            continue
        s1 = assignment.value(store.watch1[nogood_id])
        s2 = assignment.value(store.watch2[nogood_id])
        if s1 < 0 or s2 < 0:
            continue
        if s1 != 0 or s2 != 0:
            broken.append(nogood_id)
    return broken


# Convenience functions
def initial_propagation(store: NogoodStore, assignment: Assignment) -> PropagationOutcome:
    return PropagationEngine(store, assignment).initial_propagation()


def propagate_and_check(store: NogoodStore, assignment: Assignment,
                        pool: Optional[WorkerPool] = None, pending: Iterable[int] = ()) -> PropagationOutcome:
    """One propagate-and-check round from the assignment's frontier at its current level."""
    return PropagationEngine(store, assignment, pool).propagate_and_check(pending)
