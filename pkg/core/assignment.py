"""
Partial assignment for aspine.
Signed decision-level cells, the chronological trail, decision literals per
level, antecedents, the propagation frontier and the Deps bitmaps.
"""

import threading
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Union

import numpy as np

from .completion import SignedLiteral, lit_atom

WORD_BITS = 64
DEFAULT_DEPS_WORDS = 16

REASON_NONE = -1        # decisions and level-1 units
REASON_COMPLETION = -2  # falsified by complete_assignment


class AssignResult(Enum):
    NEWLY_SET = "newly_set"
    AGREED = "agreed"
    CONFLICT = "conflict"


def bits_to_row(value: int, words: int) -> np.ndarray:
    """Python int bitmask -> uint64 row of ``words`` machine words."""
    row = np.zeros(words, dtype=np.uint64)
    for w in range(words):
        row[w] = (value >> (WORD_BITS * w)) & 0xFFFFFFFFFFFFFFFF
    return row


def row_to_int(row: np.ndarray) -> int:
    value = 0
    for w in range(len(row) - 1, -1, -1):
        value = (value << WORD_BITS) | int(row[w])
    return value


def set_levels(row: np.ndarray) -> List[int]:
    """Decision levels whose bit (level - 1) is set, ascending."""
    value = row_to_int(row)
    levels = []
    bit = 0
    while value:
        if value & 1:
            levels.append(bit + 1)
        value >>= 1
        bit += 1
    return levels


@dataclass
class Frontier:
    last: List[SignedLiteral] = field(default_factory=list)
    next: List[SignedLiteral] = field(default_factory=list)

    def swap(self):
        self.last, self.next = self.next, []

    def clear(self):
        self.last = []
        self.next = []


class Assignment:
    """
    The assignment A. ``cells[p]`` is 0 when p is unassigned, +i when Tp was
    set at level i and -i when Fp was set at level i.
    """

    def __init__(self, atom_count: int, deps_words: int = DEFAULT_DEPS_WORDS):
        if deps_words < 1:
            raise ValueError("deps_words must be positive")
        self.atom_count = atom_count
        self.deps_words = deps_words
        self.capacity_levels = WORD_BITS * deps_words
        self.cells: List[int] = [0] * (atom_count + 1)
        self.trail: List[SignedLiteral] = []
        self.position: List[int] = [-1] * (atom_count + 1)
        self.antecedent: List[int] = [REASON_NONE] * (atom_count + 1)
        self.level_decisions: Dict[int, SignedLiteral] = {}
        self.level = 1
        self.deps = np.zeros((atom_count + 1, deps_words), dtype=np.uint64)
        self.frontier = Frontier()
        self._lock = threading.Lock()

    # queries
    def value(self, lit: SignedLiteral) -> int:
        """>0 when lit is in A, <0 when its complement is, 0 when unassigned."""
        cell = self.cells[lit if lit > 0 else -lit]
        if cell == 0:
            return 0
        return 1 if (cell > 0) == (lit > 0) else -1

    def contains(self, lit: SignedLiteral) -> bool:
        return self.value(lit) > 0

    def level_of(self, atom: int) -> int:
        cell = self.cells[atom]
        return cell if cell >= 0 else -cell

    def is_assigned(self, atom: int) -> bool:
        return self.cells[atom] != 0

    def is_total(self) -> bool:
        return all(self.cells[1:])

    def is_decision(self, atom: int) -> bool:
        level = self.level_of(atom)
        return level > 1 and lit_atom(self.level_decisions.get(level, 0)) == atom

    def decisions(self) -> List[SignedLiteral]:
        return [self.level_decisions[level] for level in sorted(self.level_decisions)]

    def true_atoms(self, limit: Optional[int] = None) -> List[int]:
        top = self.atom_count if limit is None else limit
        return [p for p in range(1, top + 1) if self.cells[p] > 0]

    def decision_bitmap(self, level: int) -> np.ndarray:
        row = np.zeros(self.deps_words, dtype=np.uint64)
        bit = level - 1
        if bit < self.capacity_levels:
            row[bit // WORD_BITS] = np.uint64(1 << (bit % WORD_BITS))
        return row

    def branch_bitmap(self) -> np.ndarray:
        """Bits of every decision on the current branch."""
        row = np.zeros(self.deps_words, dtype=np.uint64)
        for level in self.level_decisions:
            row |= self.decision_bitmap(level)
        return row

    # updates
    def assign(self, lit: SignedLiteral, level: int, deps: Union[np.ndarray, int, None] = None,
               reason: int = REASON_NONE) -> AssignResult:
        """
        Compare-and-set one cell.

        Args:
            lit: Literal to add to A
            level: Decision level, 1 <= level <= current level
            deps: Dependency bitmap (row or int); None means empty
            reason: Antecedent nogood id or one of the REASON_* markers

        Returns:
            NEWLY_SET, AGREED (same sign already set) or CONFLICT (opposite sign)
        """
        if level < 1 or level > self.level:
            raise ValueError(f"level {level} outside 1..{self.level}")
        atom = lit if lit > 0 else -lit
        with self._lock:
            cell = self.cells[atom]
            if cell != 0:
                return AssignResult.AGREED if (cell > 0) == (lit > 0) else AssignResult.CONFLICT
            # deps before the cell: readers that see the cell see its deps
            if deps is None:
                self.deps[atom] = 0
            elif isinstance(deps, (int, np.integer)):
                self.deps[atom] = bits_to_row(int(deps), self.deps_words)
            else:
                self.deps[atom] = deps
            self.antecedent[atom] = reason
            self.position[atom] = len(self.trail)
            self.cells[atom] = level if lit > 0 else -level
            self.trail.append(lit)
        return AssignResult.NEWLY_SET

    def decide(self, lit: SignedLiteral) -> int:
        """Open a new level and assign ``lit`` as its decision."""
        self.level += 1
        result = self.assign(lit, self.level, self.decision_bitmap(self.level), REASON_NONE)
        if result is not AssignResult.NEWLY_SET:
            self.level -= 1
            raise ValueError(f"decision literal {lit} is already assigned")
        self.level_decisions[self.level] = lit
        return self.level

    def backjump(self, target_level: int):
        """Erase everything above ``target_level`` and clear the frontier."""
        if target_level < 1 or target_level >= self.level:
            raise ValueError(f"cannot backjump from level {self.level} to {target_level}")
        trail = self.trail
        while trail:
            atom = lit_atom(trail[-1])
            if self.level_of(atom) <= target_level:
                break
            trail.pop()
            self.cells[atom] = 0
            self.deps[atom] = 0
            self.antecedent[atom] = REASON_NONE
            self.position[atom] = -1
        for level in [lv for lv in self.level_decisions if lv > target_level]:
            del self.level_decisions[level]
        self.level = target_level
        self.frontier.clear()

    def trail_entries(self) -> List[tuple]:
        return [(lit, self.level_of(lit_atom(lit))) for lit in self.trail]

    def check_coherence(self) -> List[str]:
        """Trail/cell agreement and level monotonicity problems, empty when coherent."""
        problems = []
        seen = set()
        previous = 1
        for index, lit in enumerate(self.trail):
            atom = lit_atom(lit)
            if atom in seen:
                problems.append(f"atom {atom} twice on the trail")
            seen.add(atom)
            if self.value(lit) <= 0:
                problems.append(f"trail literal {lit} disagrees with its cell")
            if self.position[atom] != index:
                problems.append(f"atom {atom} has stale trail position")
            level = self.level_of(atom)
            if level < previous:
                problems.append(f"trail level drops at {lit}")
            previous = level
        assigned = {p for p in range(1, self.atom_count + 1) if self.cells[p] != 0}
        if assigned != seen:
            problems.append("assigned cells and trail differ")
        return problems

    def format_trail(self, namer=str) -> str:
        """Debug printer: one ``level: T name`` entry per trail literal."""
        return "\n".join(
            f"{level}: {'T' if lit > 0 else 'F'} {namer(lit_atom(lit))}"
            for lit, level in self.trail_entries())


# Convenience functions
def is_total(assignment: Assignment, atom_count: int = None) -> bool:
    """True iff no cell among the first ``atom_count`` atoms is 0."""
    top = assignment.atom_count if atom_count is None else atom_count
    return all(assignment.cells[1:top + 1])


def backjump(assignment: Assignment, target_level: int):
    assignment.backjump(target_level)
