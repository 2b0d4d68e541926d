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

from pydpq import syntax as s
from pydpq.diagnostics import ParseError
from pydpq.parser import parse_expression_source, parse_source
from pydpq.pretty import pretty_expr, pretty_module

PRELUDE = pathlib.Path(__file__).parent / "prelude" / "Prelude.dpq"


class TestDeclarations(unittest.TestCase):

    def test_data(self):
        decls = parse_source("data Nat = Z | S Nat")
        self.assertEqual(decls, [s.DataDecl("Nat", [], [s.Constructor("Z", []),
                                                        s.Constructor("S", [s.Con("Nat")])])])

    def test_data_with_kinded_parameter(self):
        (decl,) = parse_source("data List (a : Type) = Nil | Cons a (List a)")
        self.assertEqual(decl.params, [s.Param("a", s.TypeKind())])
        self.assertEqual(decl.constructors[1].fields,
                         [s.Var("a"), s.App(s.Con("List"), s.Var("a"))])

    def test_signature_and_equation_merge(self):
        (decl,) = parse_source("ident : !(Qubit -> Qubit)\nident x = x\n")
        self.assertIsInstance(decl, s.TermDef)
        self.assertEqual(decl.params, ["x"])
        self.assertEqual(decl.body, s.Var("x"))
        self.assertEqual(decl.body_span.line, 2)

    def test_missing_signature(self):
        with self.assertRaises(ParseError) as cm:
            parse_source("ident x = x")
        self.assertIn("missing type signature", cm.exception.message)

    def test_signature_without_equation(self):
        with self.assertRaises(ParseError):
            parse_source("ident : !(Qubit -> Qubit)")

    def test_gate(self):
        (decl,) = parse_source("gate R Nat : Qubit -> Qubit")
        self.assertEqual(decl, s.GateDecl("R", [s.Con("Nat")],
                                          s.Pi([None], s.Icit.EXPLICIT, s.Con("Qubit"), s.Con("Qubit"))))

    def test_adjoint_and_render(self):
        adjoint, render = parse_source('adjoint R RDag\nrender RDag box dot "R*"\n')
        self.assertEqual(adjoint, s.AdjointDecl(["R", "RDag"]))
        self.assertEqual(render, s.RenderDecl("RDag", ["box", "dot"], "R*"))

    def test_simple(self):
        source = ("simple Vec a : Nat -> Type where\n"
                  "  Vec a Z = VNil\n"
                  "  Vec a (S n) = VCons a (Vec a n)\n")
        (decl,) = parse_source(source)
        self.assertIsInstance(decl, s.SimpleDecl)
        self.assertEqual([c.head_args[0] for c in decl.clauses], [s.Con("Vec"), s.Con("Vec")])
        self.assertEqual([c.alternatives[0].name for c in decl.clauses], ["VNil", "VCons"])

    def test_garbage_after_declaration(self):
        with self.assertRaises(ParseError):
            parse_source("object Qubit Bit")


class TestExpressions(unittest.TestCase):

    def test_tensor_is_left_associative(self):
        e = parse_expression_source("Qubit * Bit * Unit")
        self.assertEqual(e, s.Tensor(s.Tensor(s.Con("Qubit"), s.Con("Bit")), s.UnitType()))

    def test_arrow_is_right_associative(self):
        e = parse_expression_source("Qubit -> Bit -> Unit")
        self.assertIsInstance(e.cod, s.Pi)
        self.assertEqual(e.dom, s.Con("Qubit"))

    def test_pi_binder_group(self):
        e = parse_expression_source("(n m : Nat) -> Vec Qubit n")
        self.assertEqual(e.names, ["n", "m"])
        self.assertEqual(e.icit, s.Icit.EXPLICIT)
        self.assertEqual(e.dom, s.Con("Nat"))

    def test_forall_is_irrelevant(self):
        e = parse_expression_source("forall a (n : Nat) -> Vec a n")
        self.assertEqual(e.icit, s.Icit.IRRELEVANT)
        self.assertEqual(e.names, ["a"])
        self.assertIsNone(e.dom)
        self.assertEqual(e.cod.names, ["n"])

    def test_bang_before_binder(self):
        e = parse_expression_source("!(n : Nat) -> Circ(Vec Qubit n, Vec Qubit n)")
        self.assertIsInstance(e, s.Bang)
        self.assertIsInstance(e.type, s.Pi)

    def test_constraint(self):
        e = parse_expression_source("(Parameter a) => List a -> Nat")
        self.assertIsInstance(e, s.Constrained)
        self.assertEqual(e.constraints, [s.App(s.Con("Parameter"), s.Var("a"))])

    def test_existential(self):
        e = parse_expression_source("(n : Nat) * Circ(Vec Qubit n, Qubit)")
        self.assertIsInstance(e, s.Exists)

    def test_tuple_and_unit(self):
        self.assertEqual(parse_expression_source("(x, y, ())"),
                         s.Tuple([s.Var("x"), s.Var("y"), s.UnitVal()]))

    def test_idiom_and_operators(self):
        e = parse_expression_source("[| f a b |] && c || d")
        self.assertEqual(e.op, "||")
        self.assertEqual(e.left.op, "&&")
        self.assertIsInstance(e.left.left, s.Idiom)

    def test_let_pattern(self):
        e = parse_expression_source("let (x, y) = p in CNot x y")
        self.assertEqual(e.bindings[0].pattern, s.PTuple([s.PVar("x"), s.PVar("y")]))

    def test_do_statements(self):
        e = parse_expression_source("do\n  x <- m\n  let y = x\n  return y")
        self.assertEqual([type(st) for st in e.stmts], [s.BindStmt, s.LetStmt, s.ExprStmt])

    def test_case(self):
        e = parse_expression_source("case n of\n  Z -> 0\n  S m -> m")
        self.assertEqual([b.con for b in e.branches], ["Z", "S"])
        self.assertEqual(e.branches[1].names, ["m"])

    def test_unexpected_token(self):
        with self.assertRaises(ParseError):
            parse_expression_source("f )")


class TestPretty(unittest.TestCase):

    def test_expression_round_trip(self):
        for source in ["\\x -> CNot x (H y)", "Qubit * Bit -> Circ(Qubit, Bit)",
                       "forall (n : Nat) -> Vec Qubit n -> Vec Bit n"]:
            e = parse_expression_source(source)
            self.assertEqual(parse_expression_source(pretty_expr(e)), e)

    def test_prelude_round_trip(self):
        decls = parse_source(PRELUDE.read_text(encoding="utf-8"), str(PRELUDE))
        printed = pretty_module(decls)
        self.assertEqual(parse_source(printed), decls)


if __name__ == '__main__':
    unittest.main()
