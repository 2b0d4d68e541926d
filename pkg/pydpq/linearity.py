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
The linearity check, run on fully elaborated core terms.

A variable is linear unless it is forall-bound or its type is a
Parameter. Every linear variable must be used exactly once; the branches
of a case must agree on which enclosing linear variables they use; and a
`!` value may not capture any enclosing linear variable. Type formers and
erased arguments are never looked at.
"""

import logging
from dataclasses import dataclass, field

from pydpq import core as c
from pydpq.diagnostics import NO_SPAN, LinearityError, Span
from pydpq.syntax import Icit
from pydpq.values import VFlex

logger = logging.getLogger(__name__)

TYPE_FORMERS = (c.Pi, c.Exists, c.Bang, c.Tensor, c.Circ, c.TypeU, c.UnitT, c.ClassConstraint)


@dataclass
class _Entry:
    name: str
    span: Span
    linear: bool
    uses: list = field(default_factory=list)


class LinearityChecker:
    def __init__(self, evaluator, oracle):
        self.ev = evaluator
        self.oracle = oracle
        self.entries = []
        self.boundary = 0

    def is_linear(self, level, info):
        if info is None or info.irrelevant:
            return False
        ty = self.ev.whnf(info.type)
        if isinstance(ty, VFlex):
            return True
        mark = self.ev.metas.mark()
        try:
            return not self.oracle.is_parameter(level, ty, info.assumptions)
        finally:
            self.ev.metas.rollback(mark)

    def check(self, term):
        self.entries = []
        self.boundary = 0
        self.walk(term)

    # Scopes

    def bind(self, info):
        level = len(self.entries)
        name = info.name if info is not None and info.name else "_"
        span = info.span if info is not None else NO_SPAN
        self.entries.append(_Entry(name, span, self.is_linear(level, info)))

    def unbind(self, count=1):
        for _ in range(count):
            entry = self.entries.pop()
            if not entry.linear:
                continue
            if not entry.uses:
                raise LinearityError(f"linear variable {entry.name} is never used", entry.span)
            if len(entry.uses) > 1:
                raise LinearityError(f"linear variable {entry.name} is used more than once", entry.uses[1])

    # Traversal

    def walk(self, t):
        if isinstance(t, TYPE_FORMERS):
            return
        method = getattr(self, "walk_" + type(t).__name__, None)
        if method is not None:
            method(t)

    def walk_Var(self, t):
        level = len(self.entries) - t.ix - 1
        entry = self.entries[level]
        if not entry.linear:
            return
        if level < self.boundary:
            raise LinearityError(f"linear variable {entry.name} cannot be used inside a reusable (!) value",
                                 t.span)
        entry.uses.append(t.span)

    def walk_App(self, t):
        self.walk(t.fn)
        if t.icit is not Icit.IRRELEVANT:
            self.walk(t.arg)

    def walk_Lam(self, t):
        self.bind(t.binder)
        self.walk(t.body)
        self.unbind()

    def walk_Lift(self, t):
        saved = self.boundary
        self.boundary = len(self.entries)
        self.walk(t.term)
        self.boundary = saved

    def walk_Force(self, t):
        self.walk(t.term)

    def walk_Pair(self, t):
        self.walk(t.left)
        self.walk(t.right)

    def walk_Let(self, t):
        self.walk(t.value)
        self.bind(t.binder)
        self.walk(t.body)
        self.unbind()

    def walk_LetPair(self, t):
        self.walk(t.scrutinee)
        binders = t.binders or (None, None)
        self.bind(binders[0])
        self.bind(binders[1])
        self.walk(t.body)
        self.unbind(2)

    def walk_Dict(self, t):
        for method in t.methods:
            self.walk(method)

    def walk_Case(self, t):
        self.walk(t.scrutinee)
        before = [len(entry.uses) for entry in self.entries]
        first = None
        first_uses = None
        for branch in t.branches:
            for entry, count in zip(self.entries, before):
                del entry.uses[count:]
            binders = branch.binders or (None,) * len(branch.names)
            for info in binders:
                self.bind(info)
            self.walk(branch.body)
            self.unbind(len(binders))
            counts = [len(entry.uses) - count for entry, count in zip(self.entries, before)]
            if first is None:
                first = counts
                first_uses = [list(entry.uses) for entry in self.entries]
                continue
            for entry, a, b in zip(self.entries, first, counts):
                if entry.linear and a != b:
                    raise LinearityError(f"linear variable {entry.name} is used in some branches of this case "
                                         f"but not in others", t.span)
        if first_uses is not None:
            for entry, uses in zip(self.entries, first_uses):
                entry.uses[:] = uses


def check_linearity(evaluator, oracle, term):
    LinearityChecker(evaluator, oracle).check(term)
