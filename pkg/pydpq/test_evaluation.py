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

import unittest

from pydpq.diagnostics import DiagnosticCode, NotSimple
from pydpq.interpreter import format_value
from pydpq.session import Options, Session
from pydpq.shapes import leaves, shape_of
from pydpq.syntax import Icit
from pydpq.unify import Unifier, UnifyError
from pydpq.values import VCon, VFlex, VRigid, nat_value


class TestNormalization(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.session = Session()

    def value(self, source):
        term, _ = self.session.elaborate(source)
        return self.session.evaluator.eval((), term)

    def test_conversion_unfolds_definitions(self):
        unifier = Unifier(self.session.evaluator)
        self.assertTrue(unifier.conv(0, self.value("add 2 1"), self.value("3")))
        self.assertFalse(unifier.conv(0, self.value("add 2 1"), self.value("2")))

    def test_conversion_of_types(self):
        unifier = Unifier(self.session.evaluator)
        self.assertTrue(unifier.conv(0, self.value("Vec Qubit (add 1 1)"), self.value("Vec Qubit 2")))
        self.assertFalse(unifier.conv(0, self.value("Vec Qubit 1"), self.value("Vec Bit 1")))

    def test_shape_of_vector(self):
        shape = shape_of(self.session.evaluator, self.value("Vec Qubit 2"))
        self.assertEqual(leaves(shape), ["Qubit", "Qubit"])

    def test_shape_of_tensor(self):
        shape = shape_of(self.session.evaluator, self.value("Qubit * (Unit * Bit)"))
        self.assertEqual(leaves(shape), ["Qubit", "Bit"])

    def test_list_is_not_simple(self):
        with self.assertRaises(NotSimple):
            shape_of(self.session.evaluator, self.value("List Qubit"))

    def test_shape_of_vectors(self):
        for k in range(17):
            with self.subTest(k=k):
                shape = shape_of(self.session.evaluator, self.value(f"Vec Qubit {k}"))
                self.assertEqual(leaves(shape), ["Qubit"] * k)


class TestUnification(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.session = Session()
        cls.ev = cls.session.evaluator

    def value(self, source):
        term, _ = self.session.elaborate(source)
        return self.ev.eval((), term)

    def add(self, n, m):
        return self.ev.apply(self.ev.apply(self.value("add"), n), m)

    def succ(self, n):
        return self.ev.apply(self.value("S"), n)

    def test_solves_vector_length(self):
        mid = self.ev.metas.fresh("n")
        left = self.ev.apply(self.value("Vec Qubit"), VFlex(mid))
        Unifier(self.ev).unify(0, left, self.value("Vec Qubit 1"))
        self.assertEqual(nat_value(self.ev.metas.solution(mid)), 1)

    def test_distinct_objects(self):
        with self.assertRaises(UnifyError):
            Unifier(self.ev).unify(0, self.value("Qubit"), self.value("Bit"))

    def test_rejects_non_pattern_application(self):
        mid = self.ev.metas.fresh("m")
        with self.assertRaises(UnifyError):
            Unifier(self.ev).unify(0, VFlex(mid, ((self.value("Z"), Icit.EXPLICIT),)), self.value("Qubit"))
        self.assertIsNone(self.ev.metas.solution(mid))

    def test_open_terms(self):
        unifier = Unifier(self.ev)
        n, m = VRigid(0), VRigid(1)
        self.assertFalse(unifier.conv(2, self.add(n, self.succ(m)), self.add(self.succ(n), m)))
        self.assertTrue(unifier.conv(2, self.add(self.succ(n), m), self.succ(self.add(n, m))))
        self.assertTrue(unifier.conv(2, self.add(self.value("Z"), m), m))

    def test_weak_head_normal_form_is_stable(self):
        closed = self.ev.whnf(self.value("add 2 1"))
        self.assertIsInstance(closed, VCon)
        self.assertEqual(closed.info.name, "S")
        self.assertIs(self.ev.whnf(closed), closed)
        stuck = self.add(VRigid(0), self.succ(VRigid(1)))
        self.assertIs(self.ev.whnf(stuck), stuck)
        self.assertIs(self.ev.whnf(self.ev.whnf(stuck)), stuck)


class TestEvaluation(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.session = Session()

    def test_addition(self):
        self.assertEqual(format_value(self.session.evaluate("add 2 3")), "5")

    def test_reverse_vec(self):
        v = self.session.evaluate("reverse_vec Nat 3 (VCons 1 (VCons 2 (VCons 3 VNil)))")
        self.assertEqual(format_value(v), "VCons 3 (VCons 2 (VCons 1 VNil))")

    def test_numeral_arguments(self):
        self.assertEqual(format_value(self.session.evaluate("add", [4, 4])), "8")


class TestFuel(unittest.TestCase):

    def test_diverging_type_level_computation(self):
        session = Session(Options(use_prelude=False, fuel=50))
        source = ("data Nat = Z | S Nat\n"
                  "loop : !(Nat -> Nat)\n"
                  "loop n = loop (S n)\n"
                  "bad : !((p : Nat -> Type) -> p (loop Z) -> p Z)\n"
                  "bad p h = h\n")
        diagnostics = session.check_text(source)
        self.assertEqual([d.code for d in diagnostics], [DiagnosticCode.FUEL_EXHAUSTED])

    def test_default_fuel_runs_out_before_the_stack(self):
        session = Session(Options(use_prelude=False))
        source = ("data Nat = Z | S Nat\n"
                  "loop : !(Nat -> Nat)\n"
                  "loop n = loop n\n"
                  "bad : !((p : Nat -> Type) -> p (loop Z) -> p Z)\n"
                  "bad p h = h\n"
                  "good : !(Nat -> Nat)\n"
                  "good n = S n\n")
        diagnostics = session.check_text(source)
        self.assertEqual([d.code for d in diagnostics], [DiagnosticCode.FUEL_EXHAUSTED])
        self.assertEqual(format_value(session.evaluate("good Z")), "1")


class TestLargeNumerals(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.session = Session()

    def test_numeral_in_a_definition(self):
        self.assertEqual(self.session.check_text("big : Nat\nbig = 400\n"), [])
        self.assertEqual(format_value(self.session.evaluate("big")), "400")

    def test_numeral_in_a_command(self):
        self.assertEqual(format_value(self.session.evaluate("add 300 150")), "450")
        self.assertEqual(format_value(self.session.evaluate("add", [500, 1])), "501")


if __name__ == '__main__':
    unittest.main()
