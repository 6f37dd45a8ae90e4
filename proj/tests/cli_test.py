# Copyright 2026 The SPEA Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""End-to-end checks of the spea command-line tool.

Usage: cli_test.py <path-to-spea> <path-to-report.schema.json>
"""

import csv
import json
import math
import os
import subprocess
import sys
import tempfile
import unittest

import jsonschema

SPEA = None
SCHEMA = None

SEARCH_COLUMNS = [
    "command", "operator", "dc", "method", "a_schedule", "seed", "shots", "iterations_used", "converged",
    "c_star", "theta_star_cycles", "theta_star_rad", "matched_phase_cycles", "matched_phase_rad",
    "abs_inner_product", "phase_error_rad", "circuit_settings", "wall_time_s",
]
TRIAL_COLUMNS = [
    "command", "operator", "dc", "trial", "seed", "failed", "pairs_found", "searches", "fidelity",
    "phase_error_rad", "wall_time_s",
]


def run(*args, check_code=0):
    proc = subprocess.run([SPEA, *args], capture_output=True, text=True)
    if check_code is not None and proc.returncode != check_code:
        raise AssertionError(f"{args}: exit {proc.returncode}, stderr: {proc.stderr}")
    return proc


def report(tmp, *args, check_code=0):
    path = os.path.join(tmp, "out.json")
    run(*args, "--out", path, check_code=check_code)
    with open(path) as f:
        data = json.load(f)
    jsonschema.validate(data, SCHEMA, cls=jsonschema.Draft202012Validator)
    return data


def strip(row, *keys):
    return {k: v for k, v in row.items() if k not in ("wall_time_s", *keys)}


class CliTest(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = self._tmp.name

    def tearDown(self):
        self._tmp.cleanup()

    def test_sidelobes(self):
        rows = report(self.tmp, "sidelobes", "--dc", "2,3,4,8,16")["records"]
        by_dc = {r["dc"]: r for r in rows}
        self.assertAlmostEqual(by_dc[3]["sidelobe_max"], 0.11111, delta=1e-5)
        self.assertAlmostEqual(by_dc[16]["sidelobe_max"], 0.048453, delta=1e-6)
        self.assertEqual(by_dc[2]["central_lobe_width"], 1.0)
        self.assertLess(by_dc[2]["sidelobe_max"], 1e-15)
        values = [r["sidelobe_max"] for r in rows]
        # dc = 2 has no sidelobe at all; from dc = 3 on the maximum decreases.
        self.assertEqual(values[1:], sorted(values[1:], reverse=True))

    def test_search_rows_and_flags(self):
        data = report(self.tmp, "search", "--op", "u1", "--state", "0.1951,0.9808", "--dc", "4", "--repeats", "20",
                      "--seed", "7")
        self.assertEqual([r["seed"] for r in data["records"]], list(range(7, 27)))
        summary = data["summary"][0]
        self.assertEqual(summary["runs"], 20)
        self.assertEqual(summary["converged"], sum(r["converged"] for r in data["records"]))
        for r in data["records"]:
            self.assertAlmostEqual(r["theta_star_rad"], 2 * math.pi * r["theta_star_cycles"], places=12)

    def test_search_random_state_single_row(self):
        data = report(self.tmp, "search", "--op", "u2", "--dc", "4", "--repeats", "1", "--seed", "1")
        self.assertEqual(len(data["records"]), 1)
        self.assertIn(data["records"][0]["converged"], (True, False))

    def test_search_range_from_file(self):
        m = os.path.join(self.tmp, "m.json")
        run("export-fixture", "--op", "u2", "--out", m)
        data = report(self.tmp, "search", "--op-file", m, "--range", "0.0:0.1", "--repeats", "3")
        for r in data["records"]:
            self.assertGreaterEqual(r["theta_star_cycles"], 0.0)
            self.assertLess(r["theta_star_cycles"], 0.1)

    def test_search_replay(self):
        rows = report(self.tmp, "search", "--op", "u3", "--dc", "4", "--repeats", "4", "--seed", "11")["records"]
        for r in rows:
            again = report(self.tmp, "search", "--op", "u3", "--dc", "4", "--repeats", "1", "--seed",
                           str(r["seed"]))["records"][0]
            self.assertEqual(strip(again), strip(r))

    def test_search_jobs_do_not_change_rows(self):
        one = report(self.tmp, "search", "--op", "u2", "--repeats", "6", "--seed", "3")["records"]
        many = report(self.tmp, "search", "--op", "u2", "--repeats", "6", "--seed", "3", "--jobs", "4")["records"]
        self.assertEqual([strip(r) for r in one], [strip(r) for r in many])

    def test_decompose_u2(self):
        data = report(self.tmp, "decompose", "--op", "u2", "--dc", "2", "--successes", "3", "--seed", "2")
        ok = [r for r in data["records"] if not r["failed"]]
        self.assertEqual(len(ok), 3)
        for r in ok:
            self.assertEqual(r["pairs_found"], 4)
            self.assertGreater(r["fidelity"], 0.9)
        self.assertTrue(data["summary"][0]["target_reached"])

    def test_decompose_identity(self):
        data = report(self.tmp, "decompose", "--op", "identity4", "--dc", "2,4", "--successes", "2")
        for r in data["records"]:
            self.assertAlmostEqual(r["fidelity"], 1.0, delta=1e-6)

    def test_decompose_replay_and_jobs(self):
        args = ["decompose", "--op", "u2", "--dc", "2,3", "--successes", "3", "--seed", "40"]
        one = report(self.tmp, *args)["records"]
        many = report(self.tmp, *args, "--jobs", "3")["records"]
        self.assertEqual([strip(r) for r in one], [strip(r) for r in many])
        for r in one[:3]:
            again = report(self.tmp, "decompose", "--op", "u2", "--dc", str(r["dc"]), "--successes", "1",
                           "--seed", str(r["seed"]))["records"][0]
            self.assertEqual(strip(again, "trial"), strip(r, "trial"))

    def test_verify_bounds(self):
        proc = run("verify-bounds", "--trials", "500")
        self.assertIn("violations: 0", proc.stdout)
        data = report(self.tmp, "verify-bounds", "--trials", "200", "--dc", "2", "--seed", "4")
        for r in data["records"]:
            # Sidelobes vanish at dc = 2: any positive C* meets the lobe condition.
            if r["c_star"] > 1e-12:
                self.assertEqual(r["status"], "ok")
            self.assertNotEqual(r["status"], "violated")

    def test_csv_output(self):
        path = os.path.join(self.tmp, "runs.csv")
        run("search", "--op", "u1", "--repeats", "2", "--out", path)
        with open(path) as f:
            rows = list(csv.reader(f))
        self.assertEqual(rows[0], SEARCH_COLUMNS)
        self.assertEqual(len(rows), 3)
        self.assertTrue(os.path.exists(os.path.join(self.tmp, "runs.summary.csv")))
        path = os.path.join(self.tmp, "trials.csv")
        run("decompose", "--op", "u1", "--dc", "2", "--out", path)
        with open(path) as f:
            self.assertEqual(next(csv.reader(f)), TRIAL_COLUMNS)

    def test_config_precedence(self):
        cfg = os.path.join(self.tmp, "cfg.json")
        with open(cfg, "w") as f:
            json.dump({"dc": 8, "repeats": 2, "method": "alternative"}, f)
        rows = report(self.tmp, "search", "--op", "u1", "--config", cfg, "--dc", "3")["records"]
        self.assertEqual(len(rows), 2)
        self.assertEqual({r["dc"] for r in rows}, {3})
        self.assertEqual({r["method"] for r in rows}, {"alternative"})
        with open(cfg, "w") as f:
            json.dump({"dc": [2, 4]}, f)
        rows = report(self.tmp, "decompose", "--op", "u1", "--config", cfg)["records"]
        self.assertEqual(sorted({r["dc"] for r in rows}), [2, 4])
        with open(cfg, "w") as f:
            json.dump({"no-such-option": 1}, f)
        run("search", "--op", "u1", "--config", cfg, check_code=1)

    def test_usage_errors(self):
        for args in (
            ["search", "--bogus"],
            ["search"],
            ["search", "--op", "nope"],
            ["search", "--op", "u1", "--state", "1,x"],
            ["search", "--op", "u1", "--state", "1,0,0"],
            ["search", "--op", "u1", "--range", "0.5:0.2"],
            ["search", "--op", "u1", "--method", "other"],
            ["search", "--op", "u1", "--out", os.path.join(self.tmp, "x.txt")],
            ["decompose", "--op", "u1", "--c-goal", "0.5", "--c-req", "0.9"],
            ["export-fixture", "--op", "u1", "--hamiltonian"],
        ):
            with self.subTest(args=args):
                run(*args, check_code=1)

    def test_complex_state_accepted(self):
        data = report(self.tmp, "search", "--op", "u1", "--state", "0.5+0.5i,-0.5i")
        self.assertEqual(len(data["records"]), 1)

    def test_failure_threshold_exit_code(self):
        run("search", "--op", "u3", "--max-iterations", "1", "--repeats", "3", "--max-failure-rate", "0",
            check_code=2)
        run("decompose", "--op", "u2", "--dc", "2", "--c-goal", "0.9999999", "--c-req", "0.9999999",
            "--max-iterations", "1", "--retries", "0", "--max-trials", "2", check_code=2)

    def test_export_hamiltonian_round_trip(self):
        h = os.path.join(self.tmp, "h.json")
        run("export-fixture", "--op", "u_h2o", "--hamiltonian", "--out", h)
        data = report(self.tmp, "search", "--hamiltonian-file", h, "--repeats", "1", "--max-iterations", "2")
        self.assertEqual(data["records"][0]["operator"], h)


if __name__ == "__main__":
    SPEA = sys.argv[1]
    with open(sys.argv[2]) as f:
        SCHEMA = json.load(f)
    jsonschema.Draft202012Validator.check_schema(SCHEMA)
    unittest.main(argv=sys.argv[:1], verbosity=2)
