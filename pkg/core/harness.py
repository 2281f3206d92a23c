"""
Cross-checks and comparisons for aspine.
Runs seeded program corpora against the oracle under every solver
configuration, and solves the structured suite in both learning modes.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence

from .completion import compile_completion, nogood_census
from .config import SolverConfig
from .decide import HeuristicConfig
from .driver import Solver, SolveStats, emit_stats
from .ground_model import GroundProgram, parse_program
from .instances import handcrafted, random_corpus, structured_suite
from .nogood_store import check_integrity
from .oracle import enumerate_answer_sets

MODES = ("fwd", "res")
HEURISTICS = ("occ", "jw", "act")
WORKER_COUNTS = (1, 4)


@dataclass
class CheckReport:
    programs: int = 0
    runs: int = 0
    mismatches: List[Dict] = field(default_factory=list)
    census_failures: List[str] = field(default_factory=list)
    shape_violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.mismatches or self.census_failures or self.shape_violations)

    def summary(self) -> str:
        return (f"programs={self.programs} runs={self.runs} mismatches={len(self.mismatches)} "
                f"census_failures={len(self.census_failures)} "
                f"shape_violations={len(self.shape_violations)}")


def learned_shape_violations(solver: Solver) -> List[str]:
    """fwd-learned nogoods must hold decision literals (Tb_r) only."""
    if solver.config.mode != "fwd" or solver.stats.res_fallbacks:
        return []
    store, aux = solver.store, solver.aux
    problems = []
    for nogood_id in range(store.static_count, len(store)):
        for lit in store.literals(nogood_id):
            if lit < 0 or aux.owner.get(lit, (None, ""))[1] != "b":
                problems.append(f"learned nogood {nogood_id} holds non-decision literal {lit}")
                break
    return problems


def check_program(name: str, program: GroundProgram, report: CheckReport,
                  modes: Sequence[str] = MODES, heuristics: Sequence[str] = HEURISTICS,
                  workers: Sequence[int] = WORKER_COUNTS):
    """Compare every configuration's full enumeration with the oracle."""
    report.programs += 1
    nogoods, _ = compile_completion(program)
    if nogood_census(program)["total"] != len(nogoods):
        report.census_failures.append(name)

    expected = set(enumerate_answer_sets(program))
    for mode, heuristic, worker_count in product(modes, heuristics, workers):
        config = SolverConfig(mode=mode, heuristic=HeuristicConfig.from_flag(heuristic),
                              workers=worker_count, max_models=0, verify=True)
        solver = Solver(program, config, name)
        result = solver.solve()
        report.runs += 1
        found = [model.ids for model in result.models]
        if set(found) != expected or len(found) != len(set(found)):
            report.mismatches.append({
                "program": name,
                "mode": mode,
                "heuristic": heuristic,
                "workers": worker_count,
                "expected": sorted(sorted(program.atoms.name(a) for a in s) for s in expected),
                "found": sorted(model.sorted_atoms() for model in result.models),
            })
        problems = learned_shape_violations(solver) + solver.learning_violations
        for problem in problems + check_integrity(solver.store):
            report.shape_violations.append(f"{name} {mode}/{heuristic}/{worker_count}: {problem}")


def check_corpus(programs: int = 500, seed: int = 0, modes: Sequence[str] = MODES,
                 heuristics: Sequence[str] = HEURISTICS, workers: Sequence[int] = WORKER_COUNTS,
                 include_handcrafted: bool = True) -> CheckReport:
    """
    Oracle equivalence over a seeded random corpus.

    Args:
        programs: Number of random programs
        seed: Corpus seed
        modes, heuristics, workers: Configuration grid
        include_handcrafted: Also check the named loop/constraint programs

    Returns:
        Report of mismatches and structural problems
    """
    report = CheckReport()
    corpus = [(f"random_{i}", text) for i, text in enumerate(random_corpus(programs, seed))]
    if include_handcrafted:
        corpus += sorted(handcrafted().items())
    for name, text in corpus:
        check_program(name, parse_program(text), report, modes, heuristics, workers)
    return report


def compare_modes(suite: Optional[Dict[str, str]] = None, quick: bool = False,
                  heuristic: str = "occ", workers: int = 1, max_models: int = 1,
                  modes: Iterable[str] = MODES) -> List[SolveStats]:
    """Solve each suite instance once per learning mode."""
    suite = suite if suite is not None else structured_suite(quick)
    rows = []
    for name, text in suite.items():
        program = parse_program(text)
        for mode in modes:
            config = SolverConfig(mode=mode, heuristic=HeuristicConfig.from_flag(heuristic),
                                  workers=workers, max_models=max_models)
            rows.append(Solver(program, config, name).solve().stats)
    return rows


def comparison_csv(rows: Sequence[SolveStats]) -> str:
    return "".join(emit_stats(stats, "csv", header=(i == 0)) for i, stats in enumerate(rows))
