"""
Decision step for aspine.
Ranks applicable rules by a heuristic score of their head, decides Tb_r for
the best one, and falsifies the remaining heads when no rule is applicable.
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional

import numpy as np

from .assignment import Assignment, REASON_COMPLETION
from .completion import AuxMap, SignedLiteral, T, F, lit_atom
from .ground_model import GroundProgram
from .nogood_store import NogoodStore

HEURISTIC_KINDS = ("occurrence_count", "jeroslow_wang", "activity")
HEURISTIC_ALIASES = {"occ": "occurrence_count", "jw": "jeroslow_wang", "act": "activity"}


@dataclass
class HeuristicConfig:
    kind: str = "occurrence_count"
    activity_decay: float = 0.95
    tie_break: str = "lowest_rule_index"

    @classmethod
    def from_flag(cls, flag: str, activity_decay: float = 0.95) -> "HeuristicConfig":
        kind = HEURISTIC_ALIASES.get(flag, flag)
        if kind not in HEURISTIC_KINDS:
            raise ValueError(f"unknown heuristic '{flag}'")
        return cls(kind=kind, activity_decay=activity_decay)

    @property
    def flag(self) -> str:
        return {v: k for k, v in HEURISTIC_ALIASES.items()}[self.kind]


class Heuristic:
    """Per-atom scores for the three heuristic families."""

    def __init__(self, config: HeuristicConfig, store: NogoodStore, program: GroundProgram, aux: AuxMap):
        self.config = config
        self.program = program
        self.aux = aux
        size = store.atom_count + 1
        self.occurrences = np.zeros(size, dtype=np.float64)
        self.jw = np.zeros(size, dtype=np.float64)
        self.activity = np.zeros(size, dtype=np.float64)
        for nogood_id in range(len(store)):
            self.note_nogood(store.literals(nogood_id))

    def note_nogood(self, literals: Iterable[SignedLiteral]):
        literals = list(literals)
        weight = 2.0 ** -len(literals)
        for lit in literals:
            atom = lit_atom(lit)
            self.occurrences[atom] += 1
            self.jw[atom] += weight

    def bump(self, atoms: Iterable[int]):
        """Bump the head atoms behind ``atoms`` (aux atoms count for their rule's head)."""
        for atom in set(atoms):
            if atom <= self.program.atom_count:
                self.activity[atom] += 1.0
            elif atom in self.aux.owner:
                rule, _ = self.aux.owner[atom]
                self.activity[self.program.rules[rule].head] += 1.0

    def decay(self):
        self.activity *= self.config.activity_decay

    def scores(self, atoms: List[int]) -> np.ndarray:
        if self.config.kind == "jeroslow_wang":
            table = self.jw
        elif self.config.kind == "activity":
            table = self.activity
        else:
            table = self.occurrences
        return table[atoms]


@dataclass
class Decision:
    decided: bool
    literal: SignedLiteral = 0
    level: int = 0
    rule: int = -1


NO_APPLICABLE = Decision(decided=False)


def find_applicable(program: GroundProgram, aux: AuxMap, assignment: Assignment) -> List[int]:
    """Rules with unassigned head and b_r, Tt_r in A (or body+ empty) and Fn_r not in A."""
    applicable = []
    value = assignment.value
    for index, rule in enumerate(program.rules):
        entry = aux[index]
        if not entry.consistent:
            continue
        if assignment.is_assigned(rule.head) or assignment.is_assigned(entry.b):
            continue
        if entry.t and value(T(entry.t)) <= 0:
            continue
        if entry.n and value(F(entry.n)) > 0:
            continue
        applicable.append(index)
    return applicable


def decide(program: GroundProgram, aux: AuxMap, assignment: Assignment,
           heuristic: Heuristic, applicable: Optional[List[int]] = None) -> Decision:
    """
    Decide Tb_r for the best applicable rule.

    Args:
        program: The ground program
        aux: Auxiliary atoms of the completion
        assignment: Assignment at a conflict-free fixpoint
        heuristic: Scores of head atoms
        applicable: Precomputed applicable rules, found here when None

    Returns:
        The decision, or NO_APPLICABLE
    """
    if applicable is None:
        applicable = find_applicable(program, aux, assignment)
    if not applicable:
        return NO_APPLICABLE
    heads = [program.rules[r].head for r in applicable]
    scores = heuristic.scores(heads)
    best = applicable[int(np.argmax(scores))]  # first maximum: lowest rule index
    lit = T(aux[best].b)
    level = assignment.decide(lit)
    assignment.frontier.last.append(lit)
    return Decision(decided=True, literal=lit, level=level, rule=best)


def complete_assignment(program: GroundProgram, assignment: Assignment) -> List[SignedLiteral]:
    """Falsify every unassigned program atom at the current level."""
    deps = assignment.branch_bitmap()
    falsified = []
    for atom in program.atoms.ids():
        if not assignment.is_assigned(atom):
            assignment.assign(F(atom), assignment.level, deps, REASON_COMPLETION)
            falsified.append(F(atom))
    assignment.frontier.last.extend(falsified)
    return falsified
