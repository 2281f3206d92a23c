"""
Brute-force reference semantics for aspine.
Answer sets of small programs by reduct and least-model checking over every
candidate interpretation.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import FrozenSet, Iterable, List, Optional, Set, Tuple

from .ground_model import GroundProgram

MAX_ORACLE_ATOMS = 22


class OracleLimitError(ValueError):
    """Program too large for exhaustive enumeration."""


@dataclass
class ReductProgram:
    """Negation-free rules (head, body+) and constraints (body+)."""
    rules: List[Tuple[int, Tuple[int, ...]]] = field(default_factory=list)
    constraints: List[Tuple[int, ...]] = field(default_factory=list)


def reduct(program: GroundProgram, model: Iterable[int]) -> ReductProgram:
    """Drop rules whose negative body meets ``model`` and strip the rest of negation."""
    model = set(model)
    result = ReductProgram()
    for rule in program.rules:
        if not model.intersection(rule.neg_body):
            result.rules.append((rule.head, rule.pos_body))
    for constraint in program.constraints:
        if not model.intersection(constraint.neg_body):
            result.constraints.append(constraint.pos_body)
    return result


def least_model(program: ReductProgram) -> Optional[Set[int]]:
    """Least fixpoint of the reduct; None when a surviving constraint fires."""
    derived: Set[int] = set()
    changed = True
    while changed:
        changed = False
        for head, body in program.rules:
            if head not in derived and all(p in derived for p in body):
                derived.add(head)
                changed = True
    for body in program.constraints:
        if all(p in derived for p in body):
            return None
    return derived


def is_model(program: GroundProgram, interp: Set[int]) -> bool:
    """Classical model check of rules and constraints."""
    for rule in program.rules:
        if rule.head not in interp and _body_holds(rule, interp):
            return False
    return not any(_body_holds(c, interp) for c in program.constraints)


def _body_holds(rule, interp: Set[int]) -> bool:
    return all(p in interp for p in rule.pos_body) and not any(q in interp for q in rule.neg_body)


def is_answer_set(program: GroundProgram, model: Iterable[int]) -> bool:
    model = set(model)
    return least_model(reduct(program, model)) == model


def enumerate_answer_sets(program: GroundProgram, limit: int = MAX_ORACLE_ATOMS) -> List[FrozenSet[int]]:
    """
    Every answer set of ``program``.

    Only atoms with a defining rule can be true, so candidates range over those;
    candidates that are not classical models are skipped before the reduct.

    Raises:
        OracleLimitError: more than ``limit`` atoms
    """
    if program.atom_count > limit:
        raise OracleLimitError(f"{program.atom_count} atoms exceed the oracle limit of {limit}")
    defined = [atom for atom in program.atoms.ids() if program.defining_rules(atom)]
    found = []
    for size in range(len(defined) + 1):
        for chosen in combinations(defined, size):
            candidate = set(chosen)
            if is_model(program, candidate) and is_answer_set(program, candidate):
                found.append(frozenset(candidate))
    return found


def answer_set_names(program: GroundProgram, answer_sets: Iterable[Iterable[int]]) -> List[List[str]]:
    """Answer sets as sorted name lists, in a stable order."""
    named = [sorted(program.atoms.name(a) for a in answer_set) for answer_set in answer_sets]
    return sorted(named)
