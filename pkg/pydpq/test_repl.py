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

import pathlib
import unittest
from unittest import mock

from pydpq.repl import HELP, Repl, repl_loop
from pydpq.session import Session

CORPUS = pathlib.Path(__file__).parent.parent / "corpus"
TUTORIAL = str(CORPUS / "positive" / "Tutorial.dpq")


class TestRepl(unittest.TestCase):

    def setUp(self):
        self.output = []
        self.session = Session()
        self.repl = Repl(self.session, write=self.output.append)

    def test_type(self):
        self.assertTrue(self.repl.handle(":t VNil"))
        self.assertEqual(self.output, ["forall (a : Type) -> Vec a Z"])

    def test_evaluate(self):
        self.repl.handle("add 2 3")
        self.repl.handle("bell00Box")
        self.assertEqual(self.output, ["5", "Circ(ins=0, gates=4, outs=2)"])

    def test_draw(self):
        self.repl.handle(":d bell00Box")
        self.assertEqual(self.output, ["  Init0───H───●──\n  Init0───────⊕──"])

    def test_quit(self):
        self.assertFalse(self.repl.handle(":q"))
        self.assertFalse(self.repl.handle(":quit"))
        self.assertTrue(self.repl.handle("   "))

    def test_help_and_unknown_command(self):
        self.repl.handle(":help")
        self.repl.handle(":x")
        self.assertEqual(self.output, [HELP, "unknown command :x, try :help"])

    def test_load_and_reload(self):
        self.repl.handle(f":l {TUTORIAL}")
        self.repl.handle("three'")
        self.repl.handle(":r")
        self.assertEqual(self.output, [f"loaded {TUTORIAL}", "3", f"loaded {TUTORIAL}"])

    def test_failed_load_keeps_previous_file(self):
        self.repl.handle(f":l {TUTORIAL}")
        with self.assertLogs("pydpq.repl", "WARNING"):
            self.repl.handle(f":l {CORPUS / 'negative' / 'cnot_dup.dpq'}")
        self.assertTrue(self.output[1].startswith("LinearityError: "))
        self.output.clear()
        self.repl.handle(":t three'")
        self.assertEqual(self.output, ["Nat"])

    def test_reload_without_file(self):
        self.repl.handle(":r")
        self.assertEqual(self.output, ["error: no file has been loaded"])

    def test_missing_file(self):
        self.repl.handle(":l /nonexistent/file.dpq")
        self.assertTrue(self.output[0].startswith("error: "))

    def test_errors_do_not_stop_the_shell(self):
        self.assertTrue(self.repl.handle("nowhere"))
        self.assertTrue(self.output[0].startswith("ScopeError: "))
        self.assertTrue(self.repl.handle(":d add 1 1"))
        self.assertTrue(self.output[1].startswith("error: "))

    def test_interrupt_keeps_the_shell_running(self):
        with mock.patch.object(self.session, "evaluate", side_effect=KeyboardInterrupt):
            self.assertTrue(self.repl.handle("add 2 3"))
        self.assertTrue(self.repl.handle("add 1 1"))
        self.assertEqual(self.output, ["interrupted", "2"])

    def test_loop_stops_at_quit(self):
        self.assertEqual(repl_loop(self.session, lines=[":t add\n", ":q\n", ":t nowhere\n"]), 0)


if __name__ == '__main__':
    unittest.main()
