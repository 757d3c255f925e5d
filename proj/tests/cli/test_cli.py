"""Contract tests for the collectorlab command-line tool.

Usage: test_cli.py <path-to-collectorlab> <schemas-dir>
"""

import json
import os
import subprocess
import sys
import unittest
from pathlib import Path

import jsonschema

BINARY = None
SCHEMAS = None


def run(*args, env=None):
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run([BINARY, *args], capture_output=True, text=True, env=full_env, timeout=300)


def load_schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


class CliContract(unittest.TestCase):
    def document(self, *args, env=None):
        proc = run(*args, env=env)
        self.assertEqual(proc.returncode, 0, proc.stderr)
        doc = json.loads(proc.stdout)
        jsonschema.validate(doc, load_schema(doc["schema"]))
        return doc

    def test_every_subcommand_emits_a_valid_document(self):
        commands = [
            ["family", "--kind", "zipf", "--n", "5", "--p", "1.5"],
            ["family", "--kind", "custom", "--weights", "1,2,3"],
            ["exact", "--kind", "mixed", "--m", "4", "--p", "2"],
            ["exact", "--kind", "zipf", "--n", "6", "--method", "inclusion-exclusion"],
            ["asym", "--kind", "mixed", "--m", "50", "--expansion", "second"],
            ["asym", "--kind", "zipf", "--n", "100", "--expansion", "constants"],
            ["asym", "--kind", "uniform", "--n", "100"],
            ["simulate", "--kind", "uniform", "--n", "10", "--replicates", "2000"],
            ["simulate", "--family", '{"kind":"custom","weights":[1,1,2]}', "--replicates", "500"],
            ["plan", "--kind", "uniform", "--n", "8", "--method", "exact"],
            ["plan", "--kind", "zipf", "--n", "8", "--method", "monte-carlo", "--replicates", "5000"],
            ["ks-trend", "--kind", "zipf", "--sizes", "10,20", "--replicates", "1000"],
            ["wk-check", "--m", "4", "--p", "0.5"],
            ["wk-check", "--m", "40"],
            ["reproduce-example"],
        ]
        for cmd in commands:
            with self.subTest(cmd=" ".join(cmd)):
                self.document(*cmd)

    def test_plan_reproduces_the_mixed_example(self):
        doc = self.document("plan", "--kind", "mixed", "--m", "50", "--p", "1", "--q", "0.90")
        self.assertEqual(doc["trials"], 11996)
        self.assertIn("note", doc)
        doc = self.document("plan", "--kind", "mixed", "--n", "100", "--p", "1", "--q", "0.90")
        self.assertEqual(doc["trials"], 11996)

    def test_exact_uniform_three(self):
        doc = self.document("exact", "--kind", "uniform", "--n", "3")
        self.assertAlmostEqual(doc["expectation"], 5.5, places=9)

    def test_reproduce_example(self):
        doc = self.document("reproduce-example")
        self.assertEqual([r["trials"] for r in doc["rows"]], [11996, 2765, 686])
        self.assertTrue(doc["matches"])
        self.assertAlmostEqual(doc["quantile_y"], 2.25037, places=5)
        self.assertAlmostEqual(doc["rows"][1]["constants"]["scale"], 518.738, places=3)
        human = run("reproduce-example", "--output", "human")
        self.assertEqual(human.returncode, 0)
        for text in ("2.250367", "518.737", "11996", "2765", "686"):
            self.assertIn(text, human.stdout)

    def test_fixed_seed_output_is_byte_identical(self):
        args = ["simulate", "--kind", "mixed", "--m", "10", "--replicates", "5000", "--seed", "11"]
        first = run(*args, env={"COLLECTORLAB_THREADS": "1"})
        second = run(*args, env={"COLLECTORLAB_THREADS": "4"})
        third = run(*args)
        self.assertEqual(first.returncode, 0, first.stderr)
        self.assertEqual(first.stdout, second.stdout)
        self.assertEqual(first.stdout, third.stdout)
        self.assertNotEqual(first.stdout, run(*args[:-1], "12").stdout)

    def test_default_seed_is_zero(self):
        doc = self.document("simulate", "--kind", "uniform", "--n", "5", "--replicates", "100")
        self.assertEqual(doc["seed"], 0)

    def test_csv_outputs(self):
        proc = run("simulate", "--kind", "uniform", "--n", "4", "--replicates", "50", "--output", "csv")
        values = [int(x) for x in proc.stdout.split()]
        self.assertEqual(len(values), 50)
        self.assertEqual(values, sorted(values))
        self.assertGreaterEqual(values[0], 4)
        proc = run("ks-trend", "--kind", "uniform", "--sizes", "10,20", "--replicates", "500", "--output", "csv")
        self.assertEqual(proc.stdout.splitlines()[0], "size,ks_statistic")
        self.assertEqual(len(proc.stdout.splitlines()), 3)
        proc = run("asym", "--kind", "mixed", "--m", "50", "--output", "csv")
        self.assertEqual(proc.stdout.splitlines()[0], "term,value")

    def test_dump_writes_completion_times(self):
        path = Path(os.environ.get("TMPDIR", "/tmp")) / f"collectorlab_dump_{os.getpid()}.csv"
        try:
            self.document("simulate", "--kind", "zipf", "--n", "6", "--replicates", "300", "--dump", str(path))
            self.assertEqual(len(path.read_text().split()), 300)
        finally:
            path.unlink(missing_ok=True)

    def test_validation_errors_exit_2(self):
        cases = [
            ["bogus"],
            [],
            ["exact", "--kind", "uniform", "--n", "3", "--unknown-flag"],
            ["plan", "--kind", "mixed", "--n", "7"],
            ["exact", "--kind", "zipf", "--n", "3", "--p", "-1"],
            ["exact", "--kind", "uniform", "--n", "30", "--method", "inclusion-exclusion"],
            ["asym", "--kind", "mixed", "--m", "2"],
            ["plan", "--kind", "uniform", "--n", "5", "--q", "1.5"],
            ["simulate", "--kind", "uniform", "--n", "5", "--replicates", "0"],
            ["family", "--family", "{not json"],
            ["exact", "--output", "yaml", "--kind", "uniform", "--n", "3"],
        ]
        for cmd in cases:
            with self.subTest(cmd=" ".join(cmd)):
                proc = run(*cmd)
                self.assertEqual(proc.returncode, 2, proc.stdout + proc.stderr)
                self.assertTrue(proc.stderr.strip())

    def test_accuracy_failure_exits_3(self):
        proc = run("exact", "--kind", "zipf", "--n", "300", "--p", "1.3", "--tol", "1e-16")
        self.assertEqual(proc.returncode, 3, proc.stderr)
        self.assertIn("best estimate", proc.stderr)

    def test_bad_thread_variable_is_rejected(self):
        proc = run("simulate", "--kind", "uniform", "--n", "3", env={"COLLECTORLAB_THREADS": "zero"})
        self.assertEqual(proc.returncode, 2)


if __name__ == "__main__":
    BINARY = sys.argv[1]
    SCHEMAS = Path(sys.argv[2])
    unittest.main(argv=[sys.argv[0], "-v"])
