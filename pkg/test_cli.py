#!/usr/bin/env python3
"""
Tests for the aspine command line.
"""

import contextlib
import io
import os
import shutil
import tempfile
import unittest
from unittest import mock

import aspine
from core.driver import EXIT_ERROR, EXIT_SAT, EXIT_UNSAT, EXIT_USAGE


class CliTest(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.mkdtemp()
        patcher = mock.patch.dict(os.environ, {"ASPINE_DATA_DIR": self.tmp, "ASPINE_ACTIVITY_LOG": "0"})
        patcher.start()
        self.addCleanup(patcher.stop)
        self.addCleanup(shutil.rmtree, self.tmp, True)

    def write(self, name, text):
        path = os.path.join(self.tmp, name)
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
        return path

    def run_cli(self, *argv):
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = aspine.main(list(argv))
        return code, out.getvalue(), err.getvalue()

    def test_solve_all_models(self):
        path = self.write("choice.lp", "a :- not b.\nb :- not a.\n")
        code, out, _ = self.run_cli("solve", path, "-n", "0", "--mode", "res")
        self.assertEqual(code, EXIT_SAT)
        lines = out.splitlines()
        self.assertEqual(lines[0], "Answer: 1")
        self.assertEqual(sorted([lines[1], lines[3]]), ["a", "b"])
        self.assertEqual(lines[-1], "SATISFIABLE")

    def test_solve_unsat_with_stats(self):
        path = self.write("bad.lp", "a.\n:- a.\n")
        code, out, err = self.run_cli("solve", path, "--stats", "csv")
        self.assertEqual(code, EXIT_UNSAT)
        self.assertEqual(out, "UNSATISFIABLE\n")
        self.assertIn("instance,mode,heuristic", err)

    def test_trace_lines(self):
        path = self.write("odd.lp", "a :- not a.\n")
        code, _, err = self.run_cli("solve", path, "--trace")
        self.assertEqual(code, EXIT_UNSAT)
        self.assertIn("trace mode=fwd", err)

    def test_parse_error(self):
        path = self.write("broken.lp", "a :- b\n")
        code, _, err = self.run_cli("solve", path)
        self.assertEqual(code, EXIT_ERROR)
        self.assertIn("parse error", err)

    def test_missing_file(self):
        code, _, _ = self.run_cli("solve", os.path.join(self.tmp, "nope.lp"))
        self.assertEqual(code, EXIT_ERROR)

    def test_bad_restart_policy_is_usage_error(self):
        path = self.write("choice.lp", "a :- not b.\nb :- not a.\n")
        with self.assertRaises(SystemExit) as raised:
            self.run_cli("solve", path, "--restarts", "luby")
        self.assertEqual(raised.exception.code, 2)

    def test_invalid_config_flags_are_usage_errors(self):
        path = self.write("choice.lp", "a :- not b.\nb :- not a.\n")
        code, out, err = self.run_cli("solve", path, "--workers", "0")
        self.assertEqual(code, EXIT_USAGE)
        self.assertEqual(out, "")
        self.assertIn("usage error", err)

    def test_oracle(self):
        path = self.write("loop.lp", "p :- q.\nq :- p.\n")
        code, out, _ = self.run_cli("oracle", path)
        self.assertEqual(code, EXIT_SAT)
        self.assertEqual(out, "Answer: 1\n\nSATISFIABLE\n")

    def test_dump(self):
        path = self.write("fact.lp", "a.\n")
        code, out, _ = self.run_cli("dump", path)
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines()[0], "{F b_r(1)} completion")
        code, out, _ = self.run_cli("dump", path, "--what", "csr")
        self.assertTrue(out.startswith("offsets,"))

    def test_generate_then_solve(self):
        code, out, _ = self.run_cli("generate", "pigeonhole", "3", "2")
        self.assertEqual(code, 0)
        path = self.write("php.lp", out)
        code, _, _ = self.run_cli("solve", path, "--heur", "jw", "--workers", "2")
        self.assertEqual(code, EXIT_UNSAT)

    def test_example_programs(self):
        here = os.path.dirname(os.path.abspath(__file__))
        expected = {"choice.lp": EXIT_SAT, "loops.lp": EXIT_SAT, "pigeonhole_4_3.lp": EXIT_UNSAT}
        for name, exit_code in expected.items():
            with self.subTest(program=name):
                path = os.path.join(here, "data", "programs", name)
                self.assertEqual(self.run_cli("solve", path, "--verify")[0], exit_code)

    def test_check_small_corpus(self):
        code, out, _ = self.run_cli("check", "--programs", "5", "--workers", "1")
        self.assertEqual(code, 0)
        self.assertIn("mismatches=0", out)


if __name__ == "__main__":
    unittest.main()
