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

from pydpq.diagnostics import NO_SPAN, DiagnosticCode, DiagnosticError
from pydpq.elaborate import Ctx, Elaborator
from pydpq.session import Options, PreludeError, Session
from pydpq.values import VRigid

CORPUS = pathlib.Path(__file__).parent.parent / "corpus"

NEGATIVE = {
    "cnot_dup.dpq": DiagnosticCode.LINEARITY_ERROR,
    "test2.dpq": DiagnosticCode.CLASS_RESOLUTION_ERROR,
    "box_id.dpq": DiagnosticCode.CLASS_RESOLUTION_ERROR,
    "color_vec.dpq": DiagnosticCode.SIMPLE_DECL_ILL_FORMED,
    "inf_vec.dpq": DiagnosticCode.SIMPLE_DECL_ILL_FORMED,
    "non_bang.dpq": DiagnosticCode.PARAMETER_ERROR,
}


class TestPositiveCorpus(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.session = Session()

    def test_prelude_defines_its_names(self):
        for name in ["add", "bell00Box", "teleBox", "qftBox", "boxQftRev", "adderRev", "with_computed"]:
            self.assertIsNotNone(self.session.base.lookup(name), name)

    def test_positive_files(self):
        for path in sorted((CORPUS / "positive").glob("*.dpq")):
            with self.subTest(path=path.name):
                self.assertEqual(self.session.check_file(str(path)), [])

    def test_tutorial_definitions_stay_visible(self):
        self.session.check_file(str(CORPUS / "positive" / "Tutorial.dpq"))
        self.assertEqual(self.session.type_of("three'"), "Nat")


class TestNegativeCorpus(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.session = Session()

    def test_negative_files(self):
        for name, code in NEGATIVE.items():
            with self.subTest(file=name):
                diagnostics = self.session.check_file(str(CORPUS / "negative" / name))
                self.assertEqual([d.code for d in diagnostics], [code])
                self.assertEqual(diagnostics[0].span.file, str(CORPUS / "negative" / name))

    def test_simple_declaration_reasons(self):
        (duplicate,) = self.session.check_file(str(CORPUS / "negative" / "color_vec.dpq"))
        self.assertTrue(duplicate.message.startswith("DuplicateHead"))
        (growing,) = self.session.check_file(str(CORPUS / "negative" / "inf_vec.dpq"))
        self.assertTrue(growing.message.startswith("NonDecreasingRecursion"))

    def test_box_requires_simple(self):
        (diagnostic,) = self.session.check_file(str(CORPUS / "negative" / "box_id.dpq"))
        self.assertIn("Simple", diagnostic.message)


class TestChecker(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.session = Session()

    def test_type_of_constructor(self):
        self.assertEqual(self.session.type_of("VNil"), "forall (a : Type) -> Vec a Z")

    def test_type_of_box(self):
        self.assertEqual(self.session.type_of("bell00Box"), "Circ(Unit, Qubit * Qubit)")

    def test_double_definition(self):
        source = "one : Nat\none = 1\none : Nat\none = 2\n"
        diagnostics = self.session.check_text(source)
        self.assertEqual([d.code for d in diagnostics], [DiagnosticCode.SCOPE_ERROR])
        self.assertEqual(diagnostics[0].span.line, 3)

    def test_shadowing_the_prelude(self):
        self.assertEqual(self.session.check_text("add : Nat\nadd = 7\n"), [])
        self.assertEqual(self.session.type_of("add"), "Nat")

    def test_rejected_declaration_does_not_stop_the_file(self):
        source = "dup : !(Qubit -> Qubit * Qubit)\ndup x = CNot x x\nfour : Nat\nfour = add 2 2\n"
        diagnostics = self.session.check_text(source)
        self.assertEqual([d.code for d in diagnostics], [DiagnosticCode.LINEARITY_ERROR])
        self.assertEqual(self.session.type_of("four"), "Nat")

    def test_type_mismatch(self):
        diagnostics = self.session.check_text("bad : Nat\nbad = VNil\n")
        self.assertEqual([d.code for d in diagnostics], [DiagnosticCode.TYPE_MISMATCH])

    def test_unknown_name(self):
        with self.assertRaises(DiagnosticError) as cm:
            self.session.type_of("nowhere")
        self.assertEqual(cm.exception.code, DiagnosticCode.SCOPE_ERROR)

    def test_front_end_error_is_the_only_diagnostic(self):
        diagnostics = self.session.check_text("one : Nat\none = 1 #\n")
        self.assertEqual([d.code for d in diagnostics], [DiagnosticCode.LEX_ERROR])


class TestCoverage(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.session = Session()

    def reason(self, source):
        (diagnostic,) = self.session.check_text(source)
        return diagnostic.code, diagnostic.message.split()[0]

    def test_missing_branch(self):
        source = "f : !(Nat -> Nat)\nf n =\n  case n of\n    Z -> Z\n"
        self.assertEqual(self.reason(source), (DiagnosticCode.TYPE_MISMATCH, "MissingBranch"))

    def test_branch_matched_twice(self):
        source = "f : !(Nat -> Nat)\nf n =\n  case n of\n    Z -> Z\n    Z -> Z\n    S m -> m\n"
        self.assertEqual(self.reason(source), (DiagnosticCode.TYPE_MISMATCH, "UnreachableBranch"))

    def test_vector_needs_no_nil_branch_at_successor(self):
        source = ("uncons : ! forall (n : Nat) -> Vec Qubit (S n) -> Qubit * Vec Qubit n\n"
                  "uncons v =\n  case v of\n    VCons x xs -> (x, xs)\n")
        self.assertEqual(self.session.check_text(source), [])

    def test_missing_clause(self):
        source = "simple Half a : Nat -> Type where\n  Half a Z = HNil\n"
        self.assertEqual(self.reason(source), (DiagnosticCode.SIMPLE_DECL_ILL_FORMED, "MissingCase"))

    def test_several_constructors_in_a_clause(self):
        source = ("simple Two a : Nat -> Type where\n"
                  "  Two a Z = TNil | TEnd\n"
                  "  Two a (S n) = TCons a (Two a n)\n")
        self.assertEqual(self.reason(source),
                         (DiagnosticCode.SIMPLE_DECL_ILL_FORMED, "MultipleConstructorsPerClause"))


class TestIndexRefinement(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.session = Session()
        cls.ev = cls.session.evaluator
        cls.elab = Elaborator(cls.session.env, cls.ev)

    def value(self, source):
        term, _ = self.session.elaborate(source)
        return self.ev.eval((), term)

    def refine(self, rhs):
        ctx, _ = Ctx().bind("n", self.value("Nat"), NO_SPAN)
        return self.elab.refine(ctx, [(VRigid(0), rhs(VRigid(0)))])

    def test_cyclic_equation_has_no_solution(self):
        self.assertIsNone(self.refine(lambda n: self.ev.apply(self.value("S"), n)))

    def test_solved_variable(self):
        env, mapped = self.refine(lambda n: self.value("2"))
        self.assertEqual(mapped, {0})

    def test_occurrence_under_a_function_is_kept(self):
        add = self.value("add")
        env, mapped = self.refine(lambda n: self.ev.apply(self.ev.apply(add, n), self.value("Z")))
        self.assertEqual(mapped, set())


class TestPrelude(unittest.TestCase):

    def test_broken_prelude(self):
        with self.assertRaises(PreludeError) as cm:
            Session(Options(prelude=str(CORPUS / "negative" / "cnot_dup.dpq")))
        self.assertEqual(len(cm.exception.diagnostics), 1)

    def test_without_prelude(self):
        session = Session(Options(use_prelude=False))
        self.assertIsNone(session.base.lookup("add"))
        self.assertEqual(session.check_text("data Nat = Z | S Nat\n"), [])


if __name__ == '__main__':
    unittest.main()
