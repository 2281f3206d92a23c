"""
Request handling for aspine.
Validates incoming programs and options, runs the solver or the oracle and
shapes the results for the API and the CLI.
"""

import uuid
from datetime import datetime
from typing import Dict, Optional, Tuple, Union

from .completion import compile_completion, nogood_census
from .config import RestartPolicy, SolverConfig
from .decide import HeuristicConfig
from .driver import SolveResult, solve
from .ground_model import parse_program, validate
from .oracle import MAX_ORACLE_ATOMS, answer_set_names, enumerate_answer_sets
from .storage import log_activity

OPTION_FIELDS = ("mode", "heuristic", "workers", "models", "restarts", "deps_words", "fanout", "verify")


class QueryProcessor:
    """Turns request payloads into solver runs."""

    def __init__(self):
        self.supported_extensions = ["lp", "asp", "txt"]
        self.max_program_size = 5 * 1024 * 1024  # 5MB
        self.max_workers = 64

    def validate_program_text(self, text: Union[str, bytes, None]) -> Tuple[bool, str]:
        """
        Validate raw program text before parsing.

        Returns:
            Tuple of (is_valid, error_message)
        """
        if text is not None and not isinstance(text, (str, bytes)):
            return False, "Program must be text"
        if text is None or not text.strip():
            return False, "Program text is required"
        if len(text) > self.max_program_size:
            return False, f"Program too large. Maximum size is {self.max_program_size // (1024 * 1024)}MB"
        if isinstance(text, bytes):
            try:
                text.decode("utf-8")
            except UnicodeDecodeError:
                return False, "Program must be UTF-8 text"
        return True, ""

    def validate_filename(self, filename: Optional[str]) -> Tuple[bool, str]:
        if filename and "." in filename:
            extension = filename.rsplit(".", 1)[-1].lower()
            if extension not in self.supported_extensions:
                return False, f"Unsupported file type. Supported: {', '.join(self.supported_extensions)}"
        return True, ""

    def build_config(self, options: Dict, base: Optional[SolverConfig] = None) -> SolverConfig:
        """
        Overlay request options on the environment configuration.

        Raises:
            ValueError: an option does not parse or the result is invalid
        """
        config = base or SolverConfig.from_env()
        overrides = {
            "mode": options.get("mode"),
            "workers": _as_int(options.get("workers"), "workers"),
            "max_models": _as_int(options.get("models"), "models"),
            "deps_words": _as_int(options.get("deps_words"), "deps_words"),
            "conflict_fanout": _as_int(options.get("fanout"), "fanout"),
            "seed": _as_int(options.get("seed"), "seed"),
        }
        if options.get("heuristic") is not None:
            overrides["heuristic"] = HeuristicConfig.from_flag(str(options["heuristic"]))
        if options.get("restarts") is not None:
            overrides["restart_policy"] = RestartPolicy.parse(str(options["restarts"]))
        if options.get("verify") is not None:
            overrides["verify"] = _as_bool(options["verify"])
        config = config.with_overrides(**overrides)

        if config.workers > self.max_workers:
            raise ValueError(f"workers must not exceed {self.max_workers}")
        is_valid, error = config.validate()
        if not is_valid:
            raise ValueError(error)
        return config

    def process_solve(self, text: Union[str, bytes], options: Dict, instance: str = "request") -> Dict:
        """
        Parse, solve and summarise one program.

        Args:
            text: Program in canonical format
            options: Request options (mode, heuristic, workers, models, ...)
            instance: Label recorded with the run

        Returns:
            Run record with models, status, statistics and configuration
        """
        program = parse_program(text)
        config = self.build_config(options)
        result = solve(program, config, instance)
        run = summarize_run(result, config, instance)
        log_activity("solve_completed", {
            "run_id": run["id"],
            "instance": instance,
            "status": result.status,
            "models": len(result.models),
            "conflicts": result.stats.conflicts,
        })
        return run

    def process_oracle(self, text: Union[str, bytes]) -> Dict:
        program = parse_program(text)
        if program.atom_count > MAX_ORACLE_ATOMS:
            raise ValueError(f"oracle is limited to {MAX_ORACLE_ATOMS} atoms, program has {program.atom_count}")
        answer_sets = answer_set_names(program, enumerate_answer_sets(program))
        return {
            "answer_sets": answer_sets,
            "count": len(answer_sets),
            "status": "SAT" if answer_sets else "UNSAT",
        }

    def process_validate(self, text: Union[str, bytes]) -> Dict:
        program = parse_program(text)
        nogoods, aux = compile_completion(program)
        census = nogood_census(program)
        return {
            "atoms": program.atom_count,
            "rules": len(program.rules),
            "constraints": len(program.constraints),
            "aux_atoms": aux.atom_count,
            "nogoods": len(nogoods),
            "census": census,
            "census_matches": census["total"] == len(nogoods),
            "diagnostics": validate(program),
        }


def _as_int(value, name: str) -> Optional[int]:
    if value is None or value == "":
        return None
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ValueError(f"{name} must be an integer")


def _as_bool(value) -> bool:
    if isinstance(value, bool):
        return value
    return str(value).lower() in ("1", "true", "yes", "on")


def summarize_run(result: SolveResult, config: SolverConfig, instance: str) -> Dict:
    """Storable run record."""
    return {
        "id": str(uuid.uuid4()),
        "instance": instance,
        "created_at": datetime.now().isoformat(),
        "status": result.status,
        "models": [model.sorted_atoms() for model in result.models],
        "stats": result.stats.to_row(),
        "config": config.describe(),
    }


# Convenience functions
def process_solve(text: Union[str, bytes], options: Dict = None, instance: str = "request") -> Dict:
    """Main function to solve a submitted program."""
    return QueryProcessor().process_solve(text, options or {}, instance)


def process_oracle(text: Union[str, bytes]) -> Dict:
    return QueryProcessor().process_oracle(text)


def process_validate(text: Union[str, bytes]) -> Dict:
    return QueryProcessor().process_validate(text)


def validate_program_input(text: Union[str, bytes, None], filename: str = None) -> Tuple[bool, str]:
    """Validate submitted program text and, for uploads, its file name."""
    processor = QueryProcessor()
    is_valid, error = processor.validate_program_text(text)
    if not is_valid:
        return False, error
    return processor.validate_filename(filename)
