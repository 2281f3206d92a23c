"""
Nogood store for aspine.
Length-sorted CSR layout, literal -> nogood occurrence lists split by length
class, two watched literals per nogood and a growable learned partition.
"""

from typing import Dict, List, Sequence, Tuple

import numpy as np

from .completion import Nogood, SignedLiteral, lit_atom, ORIGIN_LEARNED

LENGTH_CLASSES = (1, 2, 3, 4)  # 4 stands for "four or more"
DEFAULT_MAX_LEARNED = 1_000_000


class StoreCapacityError(RuntimeError):
    """The learned partition is full."""


def length_class(length: int) -> int:
    return length if length < 4 else 4


def lit_index(lit: SignedLiteral) -> int:
    """Slot of a literal in per-literal tables: 2p for Tp, 2p+1 for Fp."""
    return 2 * lit if lit > 0 else -2 * lit + 1


class NogoodStore:
    """
    All nogoods of a solve, addressed by a stable integer id.

    Static nogoods (ids 0 .. static_count-1) live in ``pool``/``offsets``,
    sorted by length. Learned nogoods get the following ids and are bucketed
    by length class. Unit input nogoods never enter the store; they are kept
    in ``units`` and replayed by initial propagation.
    """

    def __init__(self, atom_count: int, max_learned: int = DEFAULT_MAX_LEARNED):
        self.atom_count = atom_count
        self.max_learned = max_learned
        self.pool = np.zeros(0, dtype=np.int64)
        self.offsets = np.zeros(1, dtype=np.int64)
        self.length_class_bounds: Dict[int, Tuple[int, int]] = {c: (0, 0) for c in LENGTH_CLASSES}
        self.static_count = 0
        self.units: List[SignedLiteral] = []

        self._literals: List[Tuple[SignedLiteral, ...]] = []
        self._classes: List[int] = []
        self.origins: List[str] = []
        slots = 2 * atom_count + 2
        self._occurrences: Dict[int, List[List[int]]] = {
            c: [[] for _ in range(slots)] for c in LENGTH_CLASSES
        }
        self.watch1: List[SignedLiteral] = []
        self.watch2: List[SignedLiteral] = []

        self.learned_buckets: Dict[int, List[int]] = {c: [] for c in LENGTH_CLASSES}
        self.learned_units: List[int] = []
        self._learned_seen = set()
        self.duplicate_learned = 0

    def __len__(self) -> int:
        return len(self._literals)

    @property
    def learned_count(self) -> int:
        return len(self._literals) - self.static_count

    def literals(self, nogood_id: int) -> Tuple[SignedLiteral, ...]:
        return self._literals[nogood_id]

    def length(self, nogood_id: int) -> int:
        return len(self._literals[nogood_id])

    def class_of(self, nogood_id: int) -> int:
        return self._classes[nogood_id]

    def is_learned(self, nogood_id: int) -> bool:
        return nogood_id >= self.static_count

    def occurrences(self, cls: int, lit: SignedLiteral) -> List[int]:
        return self._occurrences[cls][lit_index(lit)]

    def nogoods_of(self, lit: SignedLiteral) -> List[int]:
        """Ids of nogoods containing ``lit``, in length-class order."""
        slot = lit_index(lit)
        result: List[int] = []
        for cls in LENGTH_CLASSES:
            result.extend(self._occurrences[cls][slot])
        return result

    def watches(self, nogood_id: int) -> Tuple[SignedLiteral, SignedLiteral]:
        return self.watch1[nogood_id], self.watch2[nogood_id]

    def _append(self, literals: Tuple[SignedLiteral, ...], origin: str,
                watch: Tuple[SignedLiteral, SignedLiteral]) -> int:
        nogood_id = len(self._literals)
        cls = length_class(len(literals))
        self._literals.append(literals)
        self._classes.append(cls)
        self.origins.append(origin)
        self.watch1.append(watch[0])
        self.watch2.append(watch[1])
        for lit in literals:
            self._occurrences[cls][lit_index(lit)].append(nogood_id)
        return nogood_id

    def build(self, nogoods: Sequence[Nogood]) -> "NogoodStore":
        """Split units out, sort the rest by length (stable) and lay them out as CSR."""
        for nogood in nogoods:
            if len(nogood) == 0:
                raise ValueError("empty nogood")
        self.units = [nogood.literals[0] for nogood in nogoods if len(nogood) == 1]
        ordered = sorted((n for n in nogoods if len(n) > 1), key=len)

        lengths = np.array([len(n) for n in ordered], dtype=np.int64)
        self.offsets = np.zeros(len(ordered) + 1, dtype=np.int64)
        np.cumsum(lengths, out=self.offsets[1:])
        self.pool = np.array([lit for n in ordered for lit in n.literals], dtype=np.int64)

        for nogood in ordered:
            self._append(nogood.literals, nogood.origin, (nogood.literals[0], nogood.literals[1]))
        self.static_count = len(ordered)

        classes = np.minimum(lengths, 4)
        for cls in (2, 3, 4):
            start = int(np.searchsorted(classes, cls, side="left"))
            end = int(np.searchsorted(classes, cls, side="right"))
            self.length_class_bounds[cls] = (start, end)
        return self

    def add_learned(self, nogood: Nogood, positions: Sequence[int] = None) -> int:
        """
        Append a learned nogood.

        Args:
            nogood: Non-empty, non-vacuous nogood
            positions: Optional trail position per literal; the two most
                recently assigned literals become the watches

        Returns:
            The new nogood id
        """
        if len(nogood) == 0:
            raise ValueError("empty learned nogood")
        if self.learned_count >= self.max_learned:
            raise StoreCapacityError(
                f"learned nogood limit of {self.max_learned} reached")
        if nogood.literals in self._learned_seen:
            self.duplicate_learned += 1
        self._learned_seen.add(nogood.literals)

        literals = nogood.literals
        if len(literals) == 1:
            watch = (literals[0], literals[0])
        elif positions is None:
            watch = (literals[0], literals[1])
        else:
            order = sorted(range(len(literals)), key=lambda i: positions[i], reverse=True)
            watch = (literals[order[0]], literals[order[1]])

        nogood_id = self._append(literals, nogood.origin or ORIGIN_LEARNED, watch)
        cls = length_class(len(literals))
        self.learned_buckets[cls].append(nogood_id)
        if cls == 1:
            self.learned_units.append(nogood_id)
        return nogood_id

    def static_slice(self, nogood_id: int) -> np.ndarray:
        return self.pool[self.offsets[nogood_id]:self.offsets[nogood_id + 1]]

    def occurrence_count(self, atom: int) -> int:
        return len(self.nogoods_of(atom)) + len(self.nogoods_of(-atom))

    def jeroslow_wang(self, atom: int) -> float:
        return sum(2.0 ** -self.length(n) for n in self.nogoods_of(atom) + self.nogoods_of(-atom))


def dump_csv(store: NogoodStore) -> str:
    """Static CSR arrays as two CSV rows: offsets, then pool."""
    offsets = ",".join(str(int(x)) for x in store.offsets)
    pool = ",".join(str(int(x)) for x in store.pool)
    return f"offsets,{offsets}\npool,{pool}\n" if len(store.pool) else f"offsets,{offsets}\npool\n"


def check_integrity(store: NogoodStore) -> List[str]:
    """CSR and occurrence-map consistency problems, empty when healthy."""
    problems = []
    if store.offsets[0] != 0:
        problems.append("offsets[0] != 0")
    if np.any(np.diff(store.offsets) <= 0):
        problems.append("offsets not strictly increasing")
    if int(store.offsets[-1]) != len(store.pool):
        problems.append("pool length does not match offsets")
    for nogood_id in range(store.static_count):
        if tuple(int(x) for x in store.static_slice(nogood_id)) != store.literals(nogood_id):
            problems.append(f"nogood {nogood_id} does not round-trip through offsets")
    for nogood_id in range(len(store)):
        for lit in store.literals(nogood_id):
            if store.nogoods_of(lit).count(nogood_id) != 1:
                problems.append(f"nogood {nogood_id} missing from occurrences of {lit}")
    for atom in range(1, store.atom_count + 1):
        for lit in (atom, -atom):
            for nogood_id in store.nogoods_of(lit):
                if lit not in store.literals(nogood_id):
                    problems.append(f"nogood {nogood_id} wrongly listed under {lit}")
    return problems


# Convenience functions
def build_store(nogoods: Sequence[Nogood], atom_count: int = None,
                max_learned: int = DEFAULT_MAX_LEARNED) -> NogoodStore:
    """Build a store; atom_count defaults to the largest atom mentioned."""
    if atom_count is None:
        atom_count = max((lit_atom(lit) for n in nogoods for lit in n.literals), default=0)
    return NogoodStore(atom_count, max_learned).build(nogoods)
