#!/usr/bin/env python3
#
#  Copyright 2026 The pydpq Authors
#
#  Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
#  You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
#  Unless required by applicable law or agreed to in writing, software
#  distributed under the License is distributed on an "AS IS" BASIS,
#  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#  See the License for the specific language governing permissions and
#  limitations under the License.
#

import json
import pathlib
import subprocess
import sys
import tempfile
import unittest

ROOT = pathlib.Path(__file__).parent.parent
CORPUS = ROOT / "corpus"
TUTORIAL = CORPUS / "positive" / "Tutorial.dpq"
CNOT_DUP = CORPUS / "negative" / "cnot_dup.dpq"


class TestCli(unittest.TestCase):

    def pydpq(self, arguments, stdin=None):
        python_bin = sys.executable
        return subprocess.run(f"{python_bin} pydpq.py {arguments}", shell=True, cwd=ROOT, capture_output=True,
                              text=True, encoding="utf-8", input=stdin)

    def test_check(self):
        result = self.pydpq(f"check {TUTORIAL}")
        self.assertEqual(result.returncode, 0)
        self.assertEqual(result.stdout, "")

    def test_check_reports_diagnostics(self):
        result = self.pydpq(f"check {CNOT_DUP}")
        self.assertEqual(result.returncode, 1)
        self.assertTrue(result.stdout.startswith(f"LinearityError: {CNOT_DUP}:"))

    def test_json_diagnostics(self):
        result = self.pydpq(f"check --json-diagnostics {CNOT_DUP}")
        self.assertEqual(result.returncode, 1)
        (line,) = result.stdout.splitlines()
        record = json.loads(line)
        self.assertEqual(record["code"], "LinearityError")
        self.assertEqual(record["file"], str(CNOT_DUP))
        self.assertEqual(sorted(record), ["code", "col", "file", "line", "message"])

    def test_missing_file(self):
        result = self.pydpq("check does/not/exist.dpq")
        self.assertEqual(result.returncode, 2)
        self.assertTrue(result.stderr.startswith("error: "))

    def test_usage_error(self):
        self.assertEqual(self.pydpq("").returncode, 2)
        self.assertEqual(self.pydpq(f"run {TUTORIAL} add two").returncode, 2)

    def test_no_prelude(self):
        result = self.pydpq(f"check --no-prelude {TUTORIAL}")
        self.assertEqual(result.returncode, 1)
        self.assertIn("ScopeError", result.stdout)

    def test_fuel(self):
        source = ("data Nat = Z | S Nat\n"
                  "loop : !(Nat -> Nat)\n"
                  "loop n = loop (S n)\n"
                  "bad : !((p : Nat -> Type) -> p (loop Z) -> p Z)\n"
                  "bad p h = h\n")
        with tempfile.TemporaryDirectory() as temp_dir:
            path = pathlib.Path(temp_dir) / "loop.dpq"
            path.write_text(source, encoding="utf-8")
            result = self.pydpq(f"check --no-prelude --fuel 50 {path}")
        self.assertEqual(result.returncode, 1)
        self.assertIn("FuelExhausted", result.stdout)

    def test_run(self):
        result = self.pydpq(f"run {TUTORIAL} add 2 3")
        self.assertEqual((result.returncode, result.stdout), (0, "5\n"))
        self.assertEqual(self.pydpq(f"run {TUTORIAL} adderWitness").stdout, "14\n")
        self.assertEqual(self.pydpq(f"run {TUTORIAL} bell00Box").stdout, "Circ(ins=0, gates=4, outs=2)\n")

    def test_run_expression(self):
        result = self.pydpq(f'run {TUTORIAL} "reverse_vec Nat 3 three"')
        self.assertEqual(result.stdout, "VCons 3 (VCons 2 (VCons 1 VNil))\n")

    def test_draw_text(self):
        result = self.pydpq(f"draw {TUTORIAL} bell00Box --ascii")
        self.assertEqual(result.returncode, 0)
        self.assertEqual(result.stdout, (CORPUS / "golden" / "bell00Box.ascii.txt").read_text(encoding="utf-8"))

    def test_draw_svg_to_file(self):
        with tempfile.TemporaryDirectory() as temp_dir:
            output = pathlib.Path(temp_dir) / "qft.svg"
            result = self.pydpq(f"draw {TUTORIAL} qftBox 5 -f svg -o {output}")
            self.assertEqual((result.returncode, result.stdout), (0, ""))
            svg = output.read_text(encoding="utf-8")
        self.assertIn("<svg", svg)
        self.assertEqual(svg.count('id="gate-'), 15)

    def test_draw_requires_a_circuit(self):
        result = self.pydpq(f"draw {TUTORIAL} add 1 1")
        self.assertEqual(result.returncode, 1)
        self.assertTrue(result.stderr.startswith("error: "))

    def test_draw_irreversible(self):
        result = self.pydpq(f'draw {TUTORIAL} "reverse teleBox"')
        self.assertEqual(result.returncode, 1)
        self.assertIn("Discard", result.stderr)

    def test_repl(self):
        result = self.pydpq(f"repl {TUTORIAL}", stdin=":t VNil\nthree'\n:q\n")
        self.assertEqual(result.returncode, 0)
        self.assertEqual(result.stdout.splitlines(),
                         [f"loaded {TUTORIAL}", "forall (a : Type) -> Vec a Z", "3"])


if __name__ == '__main__':
    unittest.main()
