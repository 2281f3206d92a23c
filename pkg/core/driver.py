"""
Solve loop for aspine.
Compiles the completion, builds the store and runs propagate / decide / learn /
backjump until a model is found or the search space is exhausted. Handles
restarts, model enumeration and run statistics.
"""

import csv
import io
import sys
import time
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional

from .assignment import Assignment
from .completion import ORIGIN_LEARNED, compile_completion, lit_atom, make_nogood
from .config import SolverConfig
from .decide import Heuristic, complete_assignment, decide
from .ground_model import GroundProgram, founded_atoms, tp_step
from .learn import ConflictAnalysisResult, SolverError, analyze, decision_nogood
from .nogood_store import NogoodStore
from .oracle import is_answer_set
from .propagate import PropagationEngine
from .workers import WorkerPool

SAT = "SAT"
UNSAT = "UNSAT"

EXIT_SAT = 10
EXIT_UNSAT = 20
EXIT_ERROR = 1
EXIT_USAGE = 2

ORIGIN_BLOCKING = "blocking"

STATS_COLUMNS = [
    "instance", "mode", "heuristic", "workers", "status", "models",
    "decisions", "propagations", "conflicts", "learned", "avg_learned_len",
    "restarts", "wall_ms", "propagations_per_sec", "decisions_per_sec",
    "learned_per_sec", "conflicts_per_sec", "unstable", "res_fallbacks", "duplicates",
]

__all__ = [
    "SAT", "UNSAT", "Model", "SolveStats", "SolveResult", "Solver", "SolverError",
    "VerificationError", "solve", "verify_model", "emit_stats", "format_models",
]


class VerificationError(RuntimeError):
    """A model failed the answer-set check."""


@dataclass(frozen=True)
class Model:
    atoms: FrozenSet[str]
    ids: FrozenSet[int] = frozenset()

    def sorted_atoms(self) -> List[str]:
        return sorted(self.atoms)


@dataclass
class SolveStats:
    instance: str = "-"
    mode: str = "fwd"
    heuristic: str = "occ"
    workers: int = 1
    status: str = ""
    models: int = 0
    decisions: int = 0
    propagations: int = 0
    conflicts: int = 0
    learned_count: int = 0
    learned_length_sum: int = 0
    restarts: int = 0
    unstable: int = 0
    res_fallbacks: int = 0
    duplicate_learned: int = 0
    stability_learned: int = 0
    wall_time: float = 0.0
    trace: List[Dict] = field(default_factory=list)

    @property
    def avg_learned_len(self) -> float:
        return self.learned_length_sum / self.learned_count if self.learned_count else 0.0

    def _rate(self, counter: int) -> float:
        return counter / self.wall_time if self.wall_time > 0 else 0.0

    @property
    def propagations_per_sec(self) -> float:
        return self._rate(self.propagations)

    @property
    def decisions_per_sec(self) -> float:
        return self._rate(self.decisions)

    @property
    def learned_per_sec(self) -> float:
        return self._rate(self.learned_count)

    @property
    def conflicts_per_sec(self) -> float:
        return self._rate(self.conflicts)

    def to_row(self) -> Dict:
        return {
            "instance": self.instance,
            "mode": self.mode,
            "heuristic": self.heuristic,
            "workers": self.workers,
            "status": self.status,
            "models": self.models,
            "decisions": self.decisions,
            "propagations": self.propagations,
            "conflicts": self.conflicts,
            "learned": self.learned_count,
            "avg_learned_len": round(self.avg_learned_len, 3),
            "restarts": self.restarts,
            "wall_ms": round(self.wall_time * 1000, 3),
            "propagations_per_sec": round(self.propagations_per_sec, 1),
            "decisions_per_sec": round(self.decisions_per_sec, 1),
            "learned_per_sec": round(self.learned_per_sec, 1),
            "conflicts_per_sec": round(self.conflicts_per_sec, 1),
            "unstable": self.unstable,
            "res_fallbacks": self.res_fallbacks,
            "duplicates": self.duplicate_learned,
        }


@dataclass
class SolveResult:
    models: List[Model]
    stats: SolveStats
    status: str

    @property
    def satisfiable(self) -> bool:
        return self.status == SAT

    @property
    def exit_code(self) -> int:
        return EXIT_SAT if self.satisfiable else EXIT_UNSAT


class Solver:
    """One solve of one program under one configuration."""

    def __init__(self, program: GroundProgram, config: Optional[SolverConfig] = None,
                 instance: str = "-"):
        self.program = program
        self.config = config or SolverConfig()
        ok, error = self.config.validate()
        if not ok:
            raise ValueError(error)
        self.instance = instance

        nogoods, self.aux = compile_completion(program)
        self.atom_count = program.atom_count + self.aux.atom_count
        self.store = NogoodStore(self.atom_count, self.config.max_learned).build(nogoods)
        self.assignment = Assignment(self.atom_count, self.config.deps_words)
        self.heuristic = Heuristic(self.config.heuristic, self.store, program, self.aux)
        self.stats = SolveStats(
            instance=instance,
            mode=self.config.mode,
            heuristic=self.config.heuristic.flag,
            workers=self.config.workers,
        )
        self.models: List[Model] = []
        self._pending: List[int] = []
        self.learning_violations: List[str] = []

    def solve(self) -> SolveResult:
        start = time.perf_counter()
        with WorkerPool(self.config.workers) as pool:
            engine = PropagationEngine(self.store, self.assignment, pool)
            try:
                self._search(engine, pool)
            finally:
                self.stats.propagations = engine.counters.propagations
                self.stats.duplicate_learned = self.store.duplicate_learned
                self.stats.wall_time = time.perf_counter() - start
        status = SAT if self.models else UNSAT
        self.stats.status = status
        self.stats.models = len(self.models)
        return SolveResult(list(self.models), self.stats, status)

    def _search(self, engine: PropagationEngine, pool: WorkerPool):
        A = self.assignment
        config = self.config
        policy = config.restart_policy
        since_restart = 0

        if engine.initial_propagation().violated:
            return
        while True:
            outcome = engine.propagate_and_check(self._pending)
            self._pending = []

            if outcome.violated:
                self.stats.conflicts += 1
                if A.level <= 1:
                    return
                learning = analyze(outcome.conflicts, config.mode, self.store, A, pool,
                                   config.conflict_fanout)
                if learning.top_level:
                    return
                for conflict_id in outcome.conflicts:
                    self.heuristic.bump(lit_atom(x) for x in self.store.literals(conflict_id))
                self.heuristic.decay()

                since_restart += 1
                restart = policy.enabled and since_restart >= policy.threshold(self.stats.restarts)
                target = 1 if restart else learning.backjump_level
                self._learn_and_backjump(learning.results, target)
                if restart:
                    self.stats.restarts += 1
                    since_restart = 0
                    if engine.initial_propagation().violated:
                        return
                continue

            if not A.is_total():
                if decide(self.program, self.aux, A, self.heuristic).decided:
                    self.stats.decisions += 1
                elif not complete_assignment(self.program, A):
                    raise SolverError("assignment is not total but nothing is left to decide")
                continue

            if not self._accept_model():
                return

    def _accept_model(self) -> bool:
        """Handle a total conflict-free assignment; False ends the search."""
        A = self.assignment
        true_atoms = set(A.true_atoms(self.program.atom_count))

        if founded_atoms(self.program, true_atoms) != true_atoms:
            self.stats.unstable += 1
            result = decision_nogood(A, self.config.mode)
            if result.top_level:
                return False
            self._learn_and_backjump([result], result.backjump_level, stability=True)
            return True

        if self.config.verify and not verify_model(self.program, true_atoms):
            raise VerificationError(
                f"model {sorted(self.program.names_of(true_atoms))} is not an answer set")
        self.models.append(Model(self.program.names_of(true_atoms), frozenset(true_atoms)))

        max_models = self.config.max_models
        if max_models and len(self.models) >= max_models:
            return False
        decisions = A.decisions()
        if not decisions:
            return False
        blocking = make_nogood(decisions, ORIGIN_BLOCKING)
        A.backjump(1)
        self._pending.append(self.store.add_learned(blocking))
        return True

    def _learn_and_backjump(self, results: List[ConflictAnalysisResult], target: int,
                            stability: bool = False):
        """
        Store the learned nogoods and backjump to ``target``.

        Stability nogoods (learned after a failed founded check) are kept out of
        the conflict-learning counters and the trace. With ``verify`` set, every
        res result must hold one conflict-level literal and every nogood whose
        own backjump level is ``target`` must be unit after the backjump.
        """
        A = self.assignment
        learned = []
        for result in results:
            nogood = make_nogood(result.learned, ORIGIN_LEARNED)
            positions = [A.position[lit_atom(x)] for x in nogood.literals]
            if self.config.verify and result.mode_used == "res":
                at_conflict = [x for x in nogood.literals
                               if A.level_of(lit_atom(x)) == result.conflict_level]
                if len(at_conflict) != 1:
                    self.learning_violations.append(
                        f"res nogood {nogood.literals} has {len(at_conflict)} literals "
                        f"at conflict level {result.conflict_level}")
            learned.append((result, nogood, positions))
        A.backjump(target)

        for result, nogood, positions in learned:
            if self.config.verify and result.backjump_level == target:
                unassigned = [x for x in nogood.literals if A.value(x) == 0]
                if len(unassigned) != 1 or any(A.value(x) < 0 for x in nogood.literals):
                    self.learning_violations.append(
                        f"{result.mode_used} nogood {nogood.literals} is not unit after "
                        f"backjump to {target}")
            nogood_id = self.store.add_learned(nogood, positions)
            self._pending.append(nogood_id)
            self.heuristic.note_nogood(nogood.literals)
            self.heuristic.bump(lit_atom(x) for x in nogood.literals)
            if stability:
                self.stats.stability_learned += 1
                continue
            self.stats.learned_count += 1
            self.stats.learned_length_sum += len(nogood)
            if result.mode_used != self.config.mode:
                self.stats.res_fallbacks += 1
            entry = {
                "mode": result.mode_used,
                "conflict": result.conflict_id,
                "learned_len": len(nogood),
                "backjump": target,
            }
            self.stats.trace.append(entry)
            if self.config.trace:
                print("trace " + " ".join(f"{k}={v}" for k, v in entry.items()), file=sys.stderr)


def verify_model(program: GroundProgram, model) -> bool:
    """Answer-set check of a set of atom ids, plus the T_P fixpoint condition."""
    model = set(model)
    return is_answer_set(program, model) and tp_step(program, model) == model


def emit_stats(stats: SolveStats, fmt: str = "human", header: bool = True) -> str:
    """Render run statistics as CSV (with or without header) or as aligned text."""
    row = stats.to_row()
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=STATS_COLUMNS, lineterminator="\n")
        if header:
            writer.writeheader()
        writer.writerow(row)
        return buffer.getvalue()
    width = max(len(k) for k in STATS_COLUMNS)
    return "".join(f"{k.ljust(width)} : {row[k]}\n" for k in STATS_COLUMNS)


def format_models(models: List[Model], status: str) -> str:
    """``Answer: N`` blocks followed by the SATISFIABLE / UNSATISFIABLE footer."""
    lines = []
    for number, model in enumerate(models, start=1):
        lines.append(f"Answer: {number}")
        lines.append(" ".join(model.sorted_atoms()))
    lines.append("SATISFIABLE" if status == SAT else "UNSATISFIABLE")
    return "\n".join(lines) + "\n"


# Convenience functions
def solve(program: GroundProgram, config: Optional[SolverConfig] = None,
          instance: str = "-") -> SolveResult:
    """Solve ``program``; returns models, statistics and SAT / UNSAT."""
    return Solver(program, config, instance).solve()
