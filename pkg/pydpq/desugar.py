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

"""
Rewrite surface sugar into the small core-ready subset the elaborator
understands:

  * idiom brackets become join/ap/pure chains,
  * do-blocks become right-nested bind calls,
  * numerals become S (... (S Z)),
  * `&&` and `||` become calls to `and` and `or`,
  * binder groups, tuples and multi-binding lets are split into binary
    or single-binder nodes (tuples nest to the left),
  * lambda parameters that are patterns become a variable plus a let.

The output is a fixed point: desugaring it again returns an equal tree.
"""

import dataclasses

from pydpq import syntax as s
from pydpq.diagnostics import DesugarError

BINOP_NAMES = {"&&": "and", "||": "or"}


class Desugarer:
    def __init__(self):
        self.fresh_count = 0

    def fresh(self):
        name = f"p'{self.fresh_count}"
        self.fresh_count += 1
        return name

    # Declarations

    def decl(self, d):
        if isinstance(d, s.DataDecl):
            return s.DataDecl(d.name, [self.param(p) for p in d.params],
                              [self.constructor(c) for c in d.constructors], d.span)
        if isinstance(d, s.SimpleDecl):
            clauses = [s.SimpleClause([self.expr(a) for a in c.head_args],
                                      [self.constructor(alt) for alt in c.alternatives], c.span)
                       for c in d.clauses]
            return s.SimpleDecl(d.name, [self.param(p) for p in d.params], self.expr(d.index_kind),
                                clauses, d.span)
        if isinstance(d, s.GateDecl):
            return s.GateDecl(d.name, [self.expr(k) for k in d.param_kinds], self.expr(d.wire_type), d.span)
        if isinstance(d, s.ClassDecl):
            return s.ClassDecl(d.name, [self.param(p) for p in d.params],
                               [s.MethodSig(m.name, self.expr(m.type), m.span) for m in d.methods], d.span)
        if isinstance(d, s.InstanceDecl):
            return s.InstanceDecl(d.class_name, self.expr(d.head), [self.expr(c) for c in d.constraints],
                                  [s.Equation(m.name, list(m.params), self.expr(m.body), m.span)
                                   for m in d.methods], d.span)
        if isinstance(d, s.TermDef):
            return s.TermDef(d.name, self.expr(d.declared_type), list(d.params), self.expr(d.body),
                             d.span, d.body_span)
        return d

    def param(self, p):
        return s.Param(p.name, None if p.kind is None else self.expr(p.kind), p.span)

    def constructor(self, c):
        return s.Constructor(c.name, [self.expr(f) for f in c.fields], c.span)

    # Expressions

    def expr(self, e):
        method = getattr(self, "expr_" + type(e).__name__, None)
        if method is None:
            return e
        return method(e)

    def expr_App(self, e):
        return s.App(self.expr(e.fn), self.expr(e.arg), e.span)

    def expr_NatLit(self, e):
        result = s.Con("Z", e.span)
        for _ in range(e.value):
            result = s.App(s.Con("S", e.span), result, e.span)
        return result

    def expr_BinOp(self, e):
        fn = s.Var(BINOP_NAMES[e.op], e.span)
        return s.apply(fn, self.expr(e.left), self.expr(e.right), span=e.span)

    def expr_Tuple(self, e):
        items = [self.expr(item) for item in e.items]
        result = items[0]
        for item in items[1:]:
            result = s.Tuple([result, item], e.span)
        return result

    def expr_Lam(self, e):
        body = self.expr(e.body)
        for param in reversed(e.params):
            if isinstance(param, (s.PVar, s.PWild)):
                body = s.Lam([param], body, e.span)
            else:
                name = self.fresh()
                let = s.Let([s.Binding(self.pattern(param), s.Var(name, param.span), False, param.span)],
                            body, e.span)
                body = s.Lam([s.PVar(name, param.span)], let, e.span)
        return body

    def binding(self, b):
        if b.arrow:
            raise DesugarError("'<-' binding outside a do-block", b.span)
        return s.Binding(self.pattern(b.pattern), self.expr(b.expr), False, b.span)

    def expr_Let(self, e):
        body = self.expr(e.body)
        for b in reversed(e.bindings):
            body = s.Let([self.binding(b)], body, e.span)
        return body

    def expr_Case(self, e):
        branches = [s.Branch(b.con, list(b.names), self.expr(b.body), b.span) for b in e.branches]
        return s.Case(self.expr(e.scrutinee), branches, e.span)

    def expr_Do(self, e):
        if not e.stmts:
            raise DesugarError("empty do-block", e.span)
        last = e.stmts[-1]
        if not isinstance(last, s.ExprStmt):
            raise DesugarError("a do-block must end with an expression", last.span)
        result = self.expr(last.expr)
        for stmt in reversed(e.stmts[:-1]):
            if isinstance(stmt, s.LetStmt):
                for b in reversed(stmt.bindings):
                    result = s.Let([self.binding(b)], result, stmt.span)
            else:
                if isinstance(stmt, s.BindStmt):
                    pattern, bound = stmt.pattern, stmt.expr
                else:
                    pattern, bound = s.PWild(stmt.span), stmt.expr
                cont = self.expr_Lam(s.Lam([pattern], result, stmt.span))
                result = s.apply(s.Var("bind", stmt.span), self.expr(bound), cont, span=stmt.span)
        return result

    def expr_Idiom(self, e):
        head, args = s.spine(self.expr(e.expr))
        if not args:
            raise DesugarError("an idiom bracket needs a function and at least one argument", e.span)
        result = s.App(s.Var("pure", e.span), head, e.span)
        for arg in args:
            result = s.apply(s.Var("ap", e.span), result, arg, span=e.span)
        return s.App(s.Var("join", e.span), result, e.span)

    def expr_Pi(self, e):
        result = self.expr(e.cod)
        dom = None if e.dom is None else self.expr(e.dom)
        for name in reversed(e.names):
            result = s.Pi([name], e.icit, dom, result, e.span)
        return result

    def expr_Exists(self, e):
        result = self.expr(e.cod)
        dom = self.expr(e.dom)
        for name in reversed(e.names):
            result = s.Exists([name], dom, result, e.span)
        return result

    def expr_Constrained(self, e):
        return s.Constrained([self.expr(c) for c in e.constraints], self.expr(e.body), e.span)

    def expr_Bang(self, e):
        return s.Bang(self.expr(e.type), e.span)

    def expr_Tensor(self, e):
        return s.Tensor(self.expr(e.left), self.expr(e.right), e.span)

    def expr_CircType(self, e):
        return s.CircType(self.expr(e.input), self.expr(e.output), e.span)

    # Patterns

    def pattern(self, p):
        if isinstance(p, s.PTuple):
            items = [self.pattern(item) for item in p.items]
            result = items[0]
            for item in items[1:]:
                result = s.PTuple([result, item], p.span)
            return result
        if isinstance(p, s.PCon):
            return dataclasses.replace(p, args=[self.pattern(a) for a in p.args])
        return p


def desugar(decls):
    desugarer = Desugarer()
    return [desugarer.decl(d) for d in decls]


def desugar_expr(expr):
    return Desugarer().expr(expr)
