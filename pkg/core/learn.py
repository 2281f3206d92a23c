"""
Conflict analysis for aspine.

Two learners share one result type:
  res - resolution back along antecedents until one literal of the conflict
        level remains (first UIP);
  fwd - OR of the Deps bitmaps of the conflicting nogood, turned into the
        nogood of the decisions the conflict depends on.
"""

from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

from .assignment import Assignment, REASON_COMPLETION, set_levels
from .completion import ORIGIN_LEARNED, SignedLiteral, lit_atom, make_nogood
from .nogood_store import NogoodStore
from .workers import WorkerPool

MODES = ("fwd", "res")


class SolverError(RuntimeError):
    """Conflict analysis hit a state the search can never produce."""


@dataclass
class ConflictAnalysisResult:
    learned: Tuple[SignedLiteral, ...]
    backjump_level: int
    mode_used: str
    conflict_level: int = 0
    conflict_id: int = -1

    @property
    def top_level(self) -> bool:
        """The conflict depends on no decision: nothing left to backjump to."""
        return self.backjump_level == 0


@dataclass
class LearningOutcome:
    results: List[ConflictAnalysisResult] = field(default_factory=list)
    backjump_level: int = 0

    @property
    def top_level(self) -> bool:
        return self.backjump_level == 0


def select_conflict(conflicts: Sequence[int], store: NogoodStore) -> int:
    """Shortest conflicting nogood, lowest id on ties."""
    if not conflicts:
        raise ValueError("no conflicts to select from")
    return min(conflicts, key=lambda n: (store.length(n), n))


def select_conflicts(conflicts: Sequence[int], store: NogoodStore, k: int) -> List[int]:
    return sorted(set(conflicts), key=lambda n: (store.length(n), n))[:max(k, 1)]


def _last_assigned(literals: Iterable[SignedLiteral], assignment: Assignment) -> SignedLiteral:
    return max(literals, key=lambda lit: assignment.position[lit_atom(lit)])


def decision_nogood(assignment: Assignment, mode: str, conflict_id: int = -1) -> ConflictAnalysisResult:
    """Nogood of all decisions of the branch; asserting one level down."""
    level = assignment.level
    if level <= 1:
        return ConflictAnalysisResult((), 0, mode, level, conflict_id)
    learned = make_nogood(assignment.decisions(), ORIGIN_LEARNED)
    return ConflictAnalysisResult(learned.literals, level - 1, mode, level, conflict_id)


def res_learning(delta: Iterable[SignedLiteral], store: NogoodStore, assignment: Assignment,
                 conflict_id: int = -1) -> ConflictAnalysisResult:
    """
    First-UIP learning by resolution.

    Args:
        delta: Literals of a violated nogood (all contained in A)
        store: Nogood store holding the antecedents
        assignment: Current assignment, conflict level >= 2
        conflict_id: Id of the violated nogood, for tracing

    Returns:
        The learned nogood and the level at which it becomes unit
    """
    A = assignment
    delta = set(delta)
    while True:
        sigma = _last_assigned(delta, A)
        atom = lit_atom(sigma)
        sigma_level = A.level_of(atom)
        if sigma_level <= 1:
            return ConflictAnalysisResult((), 0, "res", 1, conflict_id)
        kappa = max((A.level_of(lit_atom(rho)) for rho in delta if rho != sigma), default=0)
        if kappa != sigma_level:
            learned = make_nogood(delta, ORIGIN_LEARNED)
            return ConflictAnalysisResult(learned.literals, max(kappa, 1), "res", sigma_level, conflict_id)

        reason = A.antecedent[atom]
        if reason >= 0:
            epsilon = store.literals(reason)
            delta.discard(sigma)
            delta.update(lit for lit in epsilon if lit != -sigma)
        elif reason == REASON_COMPLETION:
            # completion assumptions have no antecedent to resolve with
            return decision_nogood(A, "res", conflict_id)
        else:
            raise SolverError(f"literal {sigma} shares level {sigma_level} but has no antecedent")


def fwd_learning(delta: Iterable[SignedLiteral], store: NogoodStore, assignment: Assignment,
                 pool: Optional[WorkerPool] = None, conflict_id: int = -1) -> ConflictAnalysisResult:
    """
    Learn the decisions a violated nogood depends on.

    The Deps rows of the nogood's atoms, plus those of the antecedent of its
    last assigned literal, are OR-reduced across the pool. Every set bit
    j-1 contributes the decision of level j. The highest such level is the
    conflict level; the backjump goes to the next set level below it, or 1.
    """
    A = assignment
    pool = pool or WorkerPool(1)
    delta = list(delta)
    atoms = [lit_atom(x) for x in delta if A.level_of(lit_atom(x)) > 1]
    sigma = _last_assigned(delta, A)
    reason = A.antecedent[lit_atom(sigma)]
    if reason >= 0:
        atoms += [lit_atom(x) for x in store.literals(reason)
                  if x != -sigma and A.level_of(lit_atom(x)) > 1]

    bitmap = pool.or_reduce(A.deps[sorted(set(atoms))])
    levels = set_levels(bitmap)
    if not levels:
        return ConflictAnalysisResult((), 0, "fwd", 1, conflict_id)
    top = levels[-1]
    backjump_level = levels[-2] if len(levels) > 1 else 1
    learned = make_nogood((A.level_decisions[level] for level in levels), ORIGIN_LEARNED)
    return ConflictAnalysisResult(learned.literals, backjump_level, "fwd", top, conflict_id)


def analyze(conflicts: Sequence[int], mode: str, store: NogoodStore, assignment: Assignment,
            pool: Optional[WorkerPool] = None, fanout: int = 1) -> LearningOutcome:
    """
    Analyze the conflicts of one propagation round.

    res analyzes the selected conflict only; fwd analyzes up to ``fanout``
    conflicts (shortest first), diverting to res any conflict whose levels
    exceed the Deps capacity. The backjump target is the lowest one learned.
    """
    if mode not in MODES:
        raise ValueError(f"unknown learning mode '{mode}'")
    A = assignment
    if mode == "res":
        selected = [select_conflict(conflicts, store)]
    else:
        selected = select_conflicts(conflicts, store, fanout)

    results = []
    for conflict_id in selected:
        delta = store.literals(conflict_id)
        deepest = max(A.level_of(lit_atom(x)) for x in delta)
        if mode == "fwd" and deepest <= A.capacity_levels:
            result = fwd_learning(delta, store, A, pool, conflict_id)
        else:
            result = res_learning(delta, store, A, conflict_id)
        if result.top_level:
            return LearningOutcome([result], 0)
        results.append(result)
    return LearningOutcome(results, min(r.backjump_level for r in results))
