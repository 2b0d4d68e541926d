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
from pydpq.desugar import desugar, desugar_expr
from pydpq.diagnostics import DesugarError
from pydpq.parser import parse_expression_source, parse_source

PRELUDE = pathlib.Path(__file__).parent / "prelude" / "Prelude.dpq"


def sugar(source):
    return desugar_expr(parse_expression_source(source))


class TestDesugar(unittest.TestCase):

    def test_numeral(self):
        self.assertEqual(sugar("2"), s.App(s.Con("S"), s.App(s.Con("S"), s.Con("Z"))))
        self.assertEqual(sugar("0"), s.Con("Z"))

    def test_idiom_bracket(self):
        expected = s.App(s.Var("join"),
                         s.apply(s.Var("ap"),
                                 s.apply(s.Var("ap"), s.App(s.Var("pure"), s.Var("f")), s.Var("a")),
                                 s.Var("b")))
        self.assertEqual(sugar("[| f a b |]"), expected)

    def test_idiom_needs_arguments(self):
        with self.assertRaises(DesugarError):
            sugar("[| f |]")

    def test_do_block(self):
        e = sugar("do\n  x <- m\n  k x")
        self.assertEqual(e, s.apply(s.Var("bind"), s.Var("m"),
                                    s.Lam([s.PVar("x")], s.App(s.Var("k"), s.Var("x")))))

    def test_do_expression_statement_binds_wildcard(self):
        e = sugar("do\n  m\n  n")
        self.assertEqual(e, s.apply(s.Var("bind"), s.Var("m"), s.Lam([s.PWild()], s.Var("n"))))

    def test_do_let_statement(self):
        e = sugar("do\n  let y = x\n  return y")
        self.assertIsInstance(e, s.Let)
        self.assertEqual(e.body, s.App(s.Var("return"), s.Var("y")))

    def test_do_must_end_with_expression(self):
        with self.assertRaises(DesugarError):
            sugar("do\n  x <- m")

    def test_boolean_operators(self):
        self.assertEqual(sugar("a && b"), s.apply(s.Var("and"), s.Var("a"), s.Var("b")))
        self.assertEqual(sugar("a || b"), s.apply(s.Var("or"), s.Var("a"), s.Var("b")))

    def test_tuples_nest_to_the_left(self):
        self.assertEqual(sugar("(a, b, c)"),
                         s.Tuple([s.Tuple([s.Var("a"), s.Var("b")]), s.Var("c")]))

    def test_multi_binding_let_is_split(self):
        e = sugar("let { a = x; b = y } in b")
        self.assertEqual(len(e.bindings), 1)
        self.assertIsInstance(e.body, s.Let)

    def test_binder_group_is_split(self):
        e = sugar("(n m : Nat) -> Nat")
        self.assertEqual(e.names, ["n"])
        self.assertEqual(e.cod.names, ["m"])

    def test_pattern_lambda(self):
        e = sugar("\\(x, y) -> CNot x y")
        self.assertEqual(len(e.params), 1)
        self.assertIsInstance(e.body, s.Let)
        self.assertEqual(e.body.bindings[0].pattern, s.PTuple([s.PVar("x"), s.PVar("y")]))

    def test_arrow_binding_outside_do(self):
        with self.assertRaises(DesugarError):
            sugar("let x <- m in x")

    def test_fixed_point(self):
        decls = desugar(parse_source(PRELUDE.read_text(encoding="utf-8"), str(PRELUDE)))
        self.assertEqual(desugar(decls), decls)


if __name__ == '__main__':
    unittest.main()
