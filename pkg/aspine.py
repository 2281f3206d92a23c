#!/usr/bin/env python3
"""
Command-line entry point for aspine.

  aspine.py solve <file> [options]      solve a ground program ('-' reads stdin)
  aspine.py oracle <file>               brute-force answer sets
  aspine.py compare [--quick]           fwd vs res on the structured suite (CSV)
  aspine.py check [--programs N]        oracle cross-check of a random corpus
  aspine.py dump <file> --what WHAT     completion nogoods or CSR arrays
  aspine.py generate <family> [sizes]   print a generated instance
"""

import argparse
import sys

from core.completion import compile_completion, dump_nogoods
from core.config import RestartPolicy, SolverConfig
from core.decide import HeuristicConfig
from core.driver import (
    EXIT_ERROR, EXIT_SAT, EXIT_UNSAT, EXIT_USAGE, SolverError, VerificationError,
    emit_stats, format_models, solve,
)
from core.ground_model import ParseError, read_program
from core.harness import HEURISTICS, MODES, check_corpus, compare_modes, comparison_csv
from core.instances import generate
from core.nogood_store import StoreCapacityError, build_store, dump_csv
from core.oracle import OracleLimitError, answer_set_names, enumerate_answer_sets
from core.queryhandler import summarize_run
from core.storage import log_activity, record_run, save_json


class UsageError(ValueError):
    """Flags that parse but form an invalid configuration."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aspine", description="Conflict-driven answer set solver")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("solve", help="solve a ground program")
    p.add_argument("file")
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--heur", choices=HEURISTICS)
    p.add_argument("--workers", type=int)
    p.add_argument("--restarts", type=RestartPolicy.parse, metavar="geometric:BASE:FACTOR|off")
    p.add_argument("-n", "--models", type=int, dest="models")
    p.add_argument("--deps-words", type=int)
    p.add_argument("--fanout", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--max-learned", type=int)
    p.add_argument("--verify", action="store_true", default=None)
    p.add_argument("--stats", choices=("csv", "human"))
    p.add_argument("--trace", action="store_true", default=None)
    p.add_argument("--record", action="store_true", help="append the run to runs.json")

    p = commands.add_parser("oracle", help="brute-force answer sets")
    p.add_argument("file")

    p = commands.add_parser("compare", help="fwd vs res on the structured suite")
    p.add_argument("--quick", action="store_true")
    p.add_argument("--heur", choices=HEURISTICS, default="occ")
    p.add_argument("--workers", type=int, default=1)

    p = commands.add_parser("check", help="oracle cross-check of a random corpus")
    p.add_argument("--programs", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, nargs="+", default=[1, 4])

    p = commands.add_parser("dump", help="debug dumps")
    p.add_argument("file")
    p.add_argument("--what", choices=("nogoods", "csr"), default="nogoods")

    p = commands.add_parser("generate", help="print a generated instance")
    p.add_argument("family", choices=("random", "pigeonhole", "coloring", "visitall"))
    p.add_argument("sizes", type=int, nargs="*")
    p.add_argument("--seed", type=int, default=0)
    return parser


def config_from_args(args) -> SolverConfig:
    config = SolverConfig.from_env().with_overrides(
        mode=args.mode,
        heuristic=HeuristicConfig.from_flag(args.heur) if args.heur else None,
        workers=args.workers,
        restart_policy=args.restarts,
        max_models=args.models,
        deps_words=args.deps_words,
        conflict_fanout=args.fanout,
        seed=args.seed,
        max_learned=args.max_learned,
        verify=args.verify,
        trace=args.trace,
    )
    is_valid, error = config.validate()
    if not is_valid:
        raise UsageError(error)
    return config


def cmd_solve(args) -> int:
    config = config_from_args(args)
    program = read_program(args.file)
    result = solve(program, config, args.file)
    sys.stdout.write(format_models(result.models, result.status))
    if args.stats:
        sys.stderr.write(emit_stats(result.stats, args.stats))
    if config.trace:
        save_json("trace.json", result.stats.trace)
    if args.record:
        record_run(summarize_run(result, config, args.file))
    log_activity("solve_finished", {"instance": args.file, "status": result.status,
                                    "models": len(result.models)})
    return result.exit_code


def cmd_oracle(args) -> int:
    program = read_program(args.file)
    answer_sets = answer_set_names(program, enumerate_answer_sets(program))
    for number, names in enumerate(answer_sets, start=1):
        print(f"Answer: {number}")
        print(" ".join(names))
    print("SATISFIABLE" if answer_sets else "UNSATISFIABLE")
    return EXIT_SAT if answer_sets else EXIT_UNSAT


def cmd_compare(args) -> int:
    rows = compare_modes(quick=args.quick, heuristic=args.heur, workers=args.workers)
    sys.stdout.write(comparison_csv(rows))
    log_activity("compare_finished", {"instances": len(rows) // len(MODES)})
    return 0


def cmd_check(args) -> int:
    report = check_corpus(args.programs, args.seed, workers=args.workers)
    print(report.summary())
    for mismatch in report.mismatches[:20]:
        print(f"mismatch {mismatch}")
    for problem in (report.census_failures + report.shape_violations)[:20]:
        print(f"problem {problem}")
    log_activity("check_finished", {"summary": report.summary()})
    return 0 if report.ok else EXIT_ERROR


def cmd_dump(args) -> int:
    program = read_program(args.file)
    nogoods, aux = compile_completion(program)
    if args.what == "nogoods":
        sys.stdout.write(dump_nogoods(program, nogoods, aux))
    else:
        sys.stdout.write(dump_csv(build_store(nogoods, program.atom_count + aux.atom_count)))
    return 0


def cmd_generate(args) -> int:
    sys.stdout.write(generate(args.family, args.seed, args.sizes))
    return 0


COMMANDS = {
    "solve": cmd_solve,
    "oracle": cmd_oracle,
    "compare": cmd_compare,
    "check": cmd_check,
    "dump": cmd_dump,
    "generate": cmd_generate,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
    except (OSError, ValueError, OracleLimitError) as e:
        print(f"error: {e}", file=sys.stderr)
    except (StoreCapacityError, SolverError, VerificationError) as e:
        log_activity("solve_error", {"error": str(e)})
        print(f"error: {e}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
