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

import collections
import os
import pathlib
import tempfile
import threading
import time
import unittest

from pydpq.analysis import dataflow_problems, equivalent, is_well_formed, longest_chain
from pydpq.circuit import CircuitFormatError, parse_circuit, serialize
from pydpq.diagnostics import IrreversibleGate, NotACircuit
from pydpq.interpreter import Cancelled, RuntimeEvaluator, format_value
from pydpq.layout import layout
from pydpq.session import Session

CORPUS = pathlib.Path(__file__).parent.parent / "corpus"

ADJOINT_NAMES = {"Init0": "Term0", "Term0": "Init0", "R": "RDag", "RDag": "R"}


class TestBox(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.session = Session()

    def test_bell_pair(self):
        c = self.session.circuit("bell00Box")
        self.assertEqual([g.name for g in c.gates], ["Init0", "Init0", "H", "CNot"])
        self.assertEqual((len(c.in_wires), len(c.out_wires)), (0, 2))
        self.assertEqual(c.summary(), "Circ(ins=0, gates=4, outs=2)")

    def test_serialization_golden(self):
        golden = (CORPUS / "golden" / "bell00Box.circuit").read_text(encoding="utf-8")
        self.assertEqual(serialize(self.session.circuit("bell00Box")), golden)

    def test_serialization_is_deterministic(self):
        self.assertEqual(serialize(self.session.circuit("qftBox 4")), serialize(self.session.circuit("qftBox 4")))

    def test_teleportation(self):
        c = self.session.circuit("teleBox")
        self.assertEqual(len(c), 12)
        self.assertEqual(c.count("Meas"), 2)
        self.assertEqual(c.count("Discard"), 2)
        self.assertEqual((len(c.in_wires), len(c.out_wires)), (1, 1))

    def test_copy(self):
        c = self.session.circuit("box Qubit copy3")
        self.assertEqual(len(c), 4)
        self.assertEqual(c.count("Init0"), 2)
        self.assertEqual(len(c.out_wires), 3)

    def test_fourier_transform_sizes(self):
        for n in [0, 1, 2, 3, 5, 8]:
            with self.subTest(n=n):
                c = self.session.circuit("qftBox", [n])
                self.assertEqual(len(c), n * (n + 1) // 2)
                self.assertEqual(c.count("H"), n)
                self.assertEqual(len(c.in_wires), n)

    def test_rotation_parameters(self):
        c = self.session.circuit("qftBox 3")
        params = [format_value(g.params[0]) for g in c.gates if g.name == "R"]
        self.assertEqual(params, ["2", "3", "2"])

    def test_little_endian_transform_has_the_same_gates(self):
        def gates(source):
            c = self.session.circuit(source)
            return collections.Counter((g.name, tuple(format_value(p) for p in g.params)) for g in c.gates)
        for n in range(1, 6):
            with self.subTest(n=n):
                self.assertEqual(gates(f"qftBoxLittle {n}"), gates(f"qftBox {n}"))

    def test_boxed_circuits_are_well_formed(self):
        for source in ["bell00Box", "teleBox", "qftBox 5", "boxQftRev 4", "adderRev"]:
            with self.subTest(source=source):
                c = self.session.circuit(source)
                self.assertEqual(dataflow_problems(c), [])
                self.assertTrue(is_well_formed(c))

    def test_unbox_is_inverse_of_box(self):
        boxed = self.session.circuit("qftBox 3")
        reboxed = self.session.circuit("box (Vec Qubit 3) (unbox (qftBox 3))")
        self.assertTrue(equivalent(boxed, reboxed))
        self.assertFalse(equivalent(boxed, self.session.circuit("boxQftRev 3")))

    def test_identity_box(self):
        c = self.session.circuit("box Qubit (\\x -> x)")
        self.assertEqual(len(c), 0)
        self.assertEqual(c.in_wires, c.out_wires)

    def test_not_a_circuit(self):
        with self.assertRaises(NotACircuit):
            self.session.circuit("add 1 1")


class TestReverse(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.session = Session()

    def test_reverse_is_an_involution(self):
        for source in ["bell00Box", "adderRev"] + [f"qftBox {n}" for n in range(1, 9)]:
            with self.subTest(source=source):
                c = self.session.circuit(source)
                self.assertEqual(serialize(c.reversed().reversed()), serialize(c))

    def test_reverse_swaps_adjoints(self):
        c = self.session.circuit("boxQftRev 5")
        self.assertEqual(c.count("RDag"), 10)
        self.assertEqual(c.count("R"), 0)
        self.assertEqual(c.count("H"), 5)
        forward = self.session.circuit("qftBox 5")
        self.assertEqual([g.name for g in c.gates],
                         [ADJOINT_NAMES.get(g.name, g.name) for g in reversed(forward.gates)])

    def test_reverse_bell_pair(self):
        c = self.session.circuit("reverse bell00Box")
        self.assertEqual([g.name for g in c.gates], ["CNot", "H", "Term0", "Term0"])
        self.assertEqual((len(c.in_wires), len(c.out_wires)), (2, 0))

    def test_reverse_of_reverse_in_the_language(self):
        c = self.session.circuit("reverse (boxQftRev 3)")
        self.assertTrue(equivalent(c, self.session.circuit("qftBox 3")))

    def test_discard_is_irreversible(self):
        with self.assertRaises(IrreversibleGate) as cm:
            self.session.circuit("teleBox").reversed()
        self.assertEqual(cm.exception.gate_name, "Discard")

    def test_irreversible_in_the_language(self):
        with self.assertRaises(IrreversibleGate):
            self.session.circuit("reverse teleBox")

    def test_measurement_is_irreversible(self):
        with self.assertRaises(IrreversibleGate) as cm:
            self.session.circuit("reverse (box Qubit (\\x -> Meas x))")
        self.assertEqual(cm.exception.gate_name, "Meas")


class TestGarbage(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.session = Session()

    def test_witness(self):
        self.assertEqual(format_value(self.session.evaluate("adderWitness")), "14")

    def test_addition(self):
        self.assertEqual(format_value(self.session.evaluate("add 2 3")), "5")

    def test_garbage_free_adder(self):
        c = self.session.circuit("adderRev")
        self.assertEqual(len(c), 70)
        self.assertEqual((len(c.in_wires), len(c.out_wires)), (5, 5))
        self.assertEqual(c.count("Init0"), 13)
        self.assertEqual(c.count("Term0"), 13)
        self.assertEqual(c.count("Meas"), 0)
        self.assertEqual(c.count("Discard"), 0)

    def test_compute_copy_uncompute(self):
        names = [g.name for g in self.session.circuit("adderRev").gates]
        compute, copy, uncompute = names[:34], names[34:36], names[36:]
        self.assertEqual(copy, ["CNot", "CNot"])
        self.assertEqual(uncompute, [ADJOINT_NAMES.get(n, n) for n in reversed(compute)])

    def test_naive_adder_keeps_garbage(self):
        session = Session()
        self.assertEqual(session.check_file(str(CORPUS / "positive" / "NaiveAdder.dpq")), [])
        c = session.circuit("naiveAdderBox")
        self.assertEqual(len(c), 19)
        self.assertEqual((len(c.in_wires), len(c.out_wires)), (3, 9))
        self.assertEqual(c.count("AndG"), 3)
        self.assertEqual(c.count("OrG"), 2)


class TestCircuitText(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.session = Session()

    def test_parse_serialized(self):
        c = self.session.circuit("teleBox")
        parsed = parse_circuit(serialize(c))
        self.assertEqual(len(parsed), len(c))
        self.assertEqual([g.name for g in parsed.gates], [g.name for g in c.gates])
        self.assertEqual(len(parsed.in_wires), 1)
        self.assertEqual(dataflow_problems(parsed), [])

    def test_parse_keeps_parameters(self):
        parsed = parse_circuit(serialize(self.session.circuit("qftBox 2")))
        self.assertEqual([g.params for g in parsed.gates], [(), ("2",), ()])

    def test_parse_rejects_garbage(self):
        with self.assertRaises(CircuitFormatError):
            parse_circuit("not a circuit")
        with self.assertRaises(CircuitFormatError):
            parse_circuit("circuit ins=0 gates=2 outs=1\ninputs:\noutputs: q0\nInit0 -> q0\n")

    def test_dataflow_problems_are_found(self):
        text = "circuit ins=1 gates=1 outs=1\ninputs: q0\noutputs: q0\nH q1 -> q2\n"
        self.assertEqual(len(dataflow_problems(parse_circuit(text))), 2)

    def test_chain_length(self):
        self.assertEqual(longest_chain(self.session.circuit("bell00Box")), 3)
        for source in ["teleBox", "qftBox 4", "adderRev"]:
            with self.subTest(source=source):
                c = self.session.circuit(source)
                self.assertLessEqual(longest_chain(c), layout(c).ncolumns)
                self.assertLessEqual(layout(c).ncolumns, len(c))


class TestRuntime(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.session = Session()

    def test_cancelled(self):
        term, _ = self.session.elaborate("qftBox 3")
        cancel = threading.Event()
        cancel.set()
        with self.assertRaises(Cancelled):
            RuntimeEvaluator(cancel=cancel).evaluate(term)

    def test_gates_outside_box_are_discarded(self):
        with self.assertLogs("pydpq.interpreter", "WARNING") as cm:
            value = self.session.evaluate("bell00 ()")
        self.assertEqual(len(cm.output), 1)
        self.assertIn("outside of box", cm.output[0])
        self.assertEqual(format_value(value).count("q"), 2)


class TestGateDeclarations(unittest.TestCase):

    def load(self, session, text):
        with tempfile.TemporaryDirectory() as tmp:
            path = pathlib.Path(tmp) / "gates.dpq"
            path.write_text(text, encoding="utf-8")
            return session.load(str(path))

    def test_failed_load_leaves_gates_alone(self):
        session = Session()
        diagnostics = self.load(session, 'adjoint H Not\nrender H box "LEAK"\nbad : Nat\nbad = VNil\n')
        self.assertTrue(diagnostics)
        c = session.circuit("reverse (box Qubit (\\x -> H x))")
        self.assertEqual([g.name for g in c.gates], ["H"])
        self.assertEqual(c.gates[0].label, "H")

    def test_render_applies_to_prelude_circuits(self):
        session = Session()
        self.assertEqual(self.load(session, 'render H box "Had"\n'), [])
        c = session.circuit("bell00Box")
        self.assertEqual([g.label for g in c.gates], ["Init0", "Init0", "Had", "CNot"])
        self.assertEqual([g.label for g in c.reversed().gates], ["CNot", "Had", "Term0", "Term0"])

    def test_reload_drops_earlier_declarations(self):
        session = Session()
        self.assertEqual(self.load(session, 'render H box "Had"\n'), [])
        self.assertEqual(self.load(session, "one : Nat\none = 1\n"), [])
        self.assertEqual(session.circuit("bell00Box").gates[2].label, "H")
        self.assertEqual(Session().circuit("bell00Box").gates[2].label, "H")


@unittest.skipUnless(os.environ.get("PYDPQ_SLOW_TESTS"), "set PYDPQ_SLOW_TESTS to run")
class TestScale(unittest.TestCase):

    def test_large_fourier_transform(self):
        session = Session()
        start = time.monotonic()
        session.elaborate("qftBox 450")
        self.assertLess(time.monotonic() - start, 1.0)
        c = session.circuit("qftBox 450")
        self.assertEqual(len(c), 101475)
        self.assertEqual(serialize(c).count("\n"), 101478)
        self.assertLess(time.monotonic() - start, 60.0)


if __name__ == '__main__':
    unittest.main()
