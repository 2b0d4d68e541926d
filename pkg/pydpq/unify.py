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
Definitional equality and pattern unification over values.

Metavariables are solved only when applied to distinct bound variables.
A spine that is not a pattern is split: its longest pattern prefix is
solved against the head of the other side and the remaining arguments are
unified pointwise, which covers type constructors applied to arguments
(`m a =?= WithGarbage Qubit`). There is no eta rule.
"""

from dataclasses import dataclass, field

from pydpq import core as c
from pydpq.diagnostics import PqdError
from pydpq.syntax import Icit
from pydpq.values import (VBang, VCirc, VCon, VConstraint, VDict, VExists, VFlex, VGlobal, VHole, VLam, VPair,
                          VPi, VRigid, VStar, VStuck, VTensor, VTyCon, VType, VUnitT)


class UnifyError(PqdError):
    def __init__(self, message, left=None, right=None):
        super().__init__(message)
        self.left = left
        self.right = right


class NonPattern(Exception):
    pass


@dataclass
class PartialRenaming:
    dom: int
    cod: int
    ren: dict = field(default_factory=dict)

    def lift(self):
        ren = dict(self.ren)
        ren[self.cod] = self.dom
        return PartialRenaming(self.dom + 1, self.cod + 1, ren)


def _spine_of(v):
    """
    The arguments of an application-like value as (value, icit) pairs.
    """
    if isinstance(v, (VRigid, VFlex, VGlobal, VStuck)):
        return v.spine
    if isinstance(v, VCon):
        hidden = v.info.nparams + v.info.nhidden
        return tuple((a, Icit.IRRELEVANT if i < hidden else Icit.EXPLICIT) for i, a in enumerate(v.args))
    if isinstance(v, VTyCon):
        return tuple((a, Icit.EXPLICIT) for a in v.args)
    return None


def _with_spine(v, spine):
    if isinstance(v, VRigid):
        return VRigid(v.level, spine)
    if isinstance(v, VFlex):
        return VFlex(v.mid, spine)
    if isinstance(v, VGlobal):
        return VGlobal(v.defn, spine)
    if isinstance(v, VStuck):
        return VStuck(v.scrutinee, v.term, v.env, spine)
    if isinstance(v, VCon):
        return VCon(v.info, tuple(a for a, _ in spine))
    return VTyCon(v.info, tuple(a for a, _ in spine))


class Unifier:
    def __init__(self, evaluator):
        self.ev = evaluator
        self.metas = evaluator.metas

    def conv(self, level, a, b):
        """
        Definitional equality; metavariables solved along the way are kept
        only when the answer is yes.
        """
        mark = self.metas.mark()
        try:
            self.unify(level, a, b)
            return True
        except UnifyError:
            self.metas.rollback(mark)
            return False

    def unify(self, level, a, b):
        ev = self.ev
        a = ev.force(a)
        b = ev.force(b)
        if isinstance(a, VFlex) and isinstance(b, VFlex) and a.mid == b.mid:
            mark = self.metas.mark()
            try:
                self.unify_spines(level, a.spine, b.spine)
                return
            except UnifyError:
                self.metas.rollback(mark)
        if isinstance(a, VFlex):
            return self.solve(level, a.mid, a.spine, b)
        if isinstance(b, VFlex):
            return self.solve(level, b.mid, b.spine, a)
        if isinstance(a, VGlobal) and isinstance(b, VGlobal) and a.defn is b.defn:
            mark = self.metas.mark()
            try:
                self.unify_spines(level, a.spine, b.spine)
                return
            except UnifyError:
                self.metas.rollback(mark)
        if isinstance(a, (VGlobal, VStuck)):
            a2 = ev.whnf(a)
            if a2 is not a:
                return self.unify(level, a2, b)
        if isinstance(b, (VGlobal, VStuck)):
            b2 = ev.whnf(b)
            if b2 is not b:
                return self.unify(level, a, b2)
        self.unify_rigid(level, a, b)

    def unify_spines(self, level, sa, sb):
        if len(sa) != len(sb):
            raise UnifyError("spine length mismatch")
        for (x, _), (y, _) in zip(sa, sb):
            self.unify(level, x, y)

    def unify_closures(self, level, ca, cb):
        fresh = VRigid(level)
        self.unify(level + 1, self.ev.instantiate(ca, fresh), self.ev.instantiate(cb, fresh))

    def unify_rigid(self, level, a, b):
        ev = self.ev
        if isinstance(a, VRigid) and isinstance(b, VRigid) and a.level == b.level:
            return self.unify_spines(level, a.spine, b.spine)
        if isinstance(a, VLam) and isinstance(b, VLam):
            return self.unify_closures(level, a.closure, b.closure)
        if isinstance(a, VPi) and isinstance(b, VPi) and a.icit == b.icit:
            self.unify(level, a.dom, b.dom)
            return self.unify_closures(level, a.closure, b.closure)
        if isinstance(a, VExists) and isinstance(b, VExists):
            self.unify(level, a.dom, b.dom)
            return self.unify_closures(level, a.closure, b.closure)
        if isinstance(a, VBang) and isinstance(b, VBang):
            return self.unify(level, a.type, b.type)
        if isinstance(a, VTensor) and isinstance(b, VTensor):
            self.unify(level, a.left, b.left)
            return self.unify(level, a.right, b.right)
        if isinstance(a, VPair) and isinstance(b, VPair):
            self.unify(level, a.left, b.left)
            return self.unify(level, a.right, b.right)
        if isinstance(a, VCirc) and isinstance(b, VCirc):
            self.unify(level, a.input, b.input)
            return self.unify(level, a.output, b.output)
        if isinstance(a, (VUnitT, VStar, VType)) and type(a) is type(b):
            return
        if isinstance(a, (VTyCon, VCon)) and type(a) is type(b) and a.info is b.info:
            if len(a.args) != len(b.args):
                raise UnifyError("partial application mismatch", a, b)
            for x, y in zip(a.args, b.args):
                self.unify(level, x, y)
            return
        if isinstance(a, VConstraint) and isinstance(b, VConstraint) and a.cls is b.cls:
            return self.unify(level, a.arg, b.arg)
        if isinstance(a, VStuck) and isinstance(b, VStuck) and a.term is b.term:
            self.unify(level, a.scrutinee, b.scrutinee)
            self.unify_stuck_bodies(level, a, b)
            return self.unify_spines(level, a.spine, b.spine)
        if isinstance(a, VDict) and isinstance(b, VDict) and a.instance is b.instance:
            return
        if isinstance(a, VHole) and isinstance(b, VHole) and a.hole is b.hole:
            return
        raise UnifyError("values differ", a, b)

    def unify_stuck_bodies(self, level, a, b):
        ev = self.ev
        t = a.term
        if isinstance(t, c.LetPair):
            fresh = (VRigid(level), VRigid(level + 1))
            return self.unify(level + 2, ev.eval(a.env + fresh, t.body), ev.eval(b.env + fresh, t.body))
        for branch in t.branches:
            n = len(branch.names)
            fresh = tuple(VRigid(level + i) for i in range(n))
            self.unify(level + n, ev.eval(a.env + fresh, branch.body), ev.eval(b.env + fresh, branch.body))

    # Metavariable solutions

    def invert(self, level, spine):
        ren = {}
        for i, (arg, _) in enumerate(spine):
            arg = self.ev.force(arg)
            if not isinstance(arg, VRigid) or arg.spine or arg.level in ren:
                raise NonPattern()
            ren[arg.level] = i
        return PartialRenaming(len(spine), level, ren)

    def solve(self, level, mid, spine, rhs):
        try:
            pren = self.invert(level, spine)
        except NonPattern:
            return self.solve_split(level, mid, spine, rhs)
        body = self.rename(mid, pren, rhs)
        for arg, icit in reversed(spine):
            body = c.Lam(None, icit, body)
        self.metas.solve(mid, self.ev.eval((), body))

    def solve_split(self, level, mid, spine, rhs):
        prefix = len(spine) - 1
        while prefix >= 0:
            try:
                self.invert(level, spine[:prefix])
                break
            except NonPattern:
                prefix -= 1
        extra = len(spine) - prefix
        for candidate in (self.ev.force(rhs), self.ev.whnf(rhs)):
            rhs_spine = _spine_of(candidate)
            if rhs_spine is None or len(rhs_spine) < extra:
                continue
            split = len(rhs_spine) - extra
            for (x, _), (y, _) in zip(spine[prefix:], rhs_spine[split:]):
                self.unify(level, x, y)
            return self.solve(level, mid, spine[:prefix], _with_spine(candidate, rhs_spine[:split]))
        raise UnifyError("cannot solve a metavariable applied to non-variables", VFlex(mid, spine), rhs)

    def rename(self, mid, pren, v):
        ev = self.ev
        v = ev.force(v)
        if isinstance(v, VFlex):
            if v.mid == mid:
                raise UnifyError("metavariable occurs in its own solution")
            return self.rename_spine(mid, pren, c.Meta(v.mid), v.spine)
        if isinstance(v, VRigid):
            if v.level not in pren.ren:
                raise UnifyError("variable escapes the scope of a metavariable")
            return self.rename_spine(mid, pren, c.Var(pren.dom - pren.ren[v.level] - 1), v.spine)
        if isinstance(v, (VGlobal, VStuck)):
            try:
                if isinstance(v, VGlobal):
                    return self.rename_spine(mid, pren, c.Global(v.defn), v.spine)
                return self.rename_spine(mid, pren, self.rename_stuck(mid, pren, v), v.spine)
            except UnifyError:
                unfolded = ev.whnf(v)
                if unfolded is v:
                    raise
                return self.rename(mid, pren, unfolded)
        if isinstance(v, VLam):
            body = ev.instantiate(v.closure, VRigid(pren.cod))
            return c.Lam(v.name, v.icit, self.rename(mid, pren.lift(), body))
        if isinstance(v, VPi):
            cod = ev.instantiate(v.closure, VRigid(pren.cod))
            return c.Pi(v.name, v.icit, self.rename(mid, pren, v.dom), self.rename(mid, pren.lift(), cod))
        if isinstance(v, VExists):
            cod = ev.instantiate(v.closure, VRigid(pren.cod))
            return c.Exists(v.name, self.rename(mid, pren, v.dom), self.rename(mid, pren.lift(), cod))
        if isinstance(v, VBang):
            return c.Bang(self.rename(mid, pren, v.type))
        if isinstance(v, VTensor):
            return c.Tensor(self.rename(mid, pren, v.left), self.rename(mid, pren, v.right))
        if isinstance(v, VPair):
            return c.Pair(self.rename(mid, pren, v.left), self.rename(mid, pren, v.right))
        if isinstance(v, VCirc):
            return c.Circ(self.rename(mid, pren, v.input), self.rename(mid, pren, v.output))
        if isinstance(v, VUnitT):
            return c.UnitT()
        if isinstance(v, VStar):
            return c.Star()
        if isinstance(v, VType):
            return c.TypeU()
        if isinstance(v, VTyCon):
            return self.rename_spine(mid, pren, c.TyCon(v.info), _spine_of(v))
        if isinstance(v, VCon):
            return self.rename_spine(mid, pren, c.Con(v.info), _spine_of(v))
        if isinstance(v, VConstraint):
            return c.ClassConstraint(v.cls, self.rename(mid, pren, v.arg))
        if isinstance(v, VHole):
            return c.Evidence(v.hole)
        if isinstance(v, VDict):
            if v.instance is None:
                return c.Witness("builtin")
            return c.Dict(v.instance, tuple(self.rename(mid, pren, m) for m in v.methods))
        raise UnifyError(f"cannot use {v!r} in a metavariable solution")

    def rename_spine(self, mid, pren, head, spine):
        for arg, icit in spine:
            head = c.App(head, self.rename(mid, pren, arg), icit)
        return head

    def rename_stuck(self, mid, pren, v):
        ev = self.ev
        scrutinee = self.rename(mid, pren, v.scrutinee)
        t = v.term
        if isinstance(t, c.LetPair):
            inner = pren.lift().lift()
            body = ev.eval(v.env + (VRigid(pren.cod), VRigid(pren.cod + 1)), t.body)
            return c.LetPair(t.names, scrutinee, self.rename(mid, inner, body), t.binders)
        branches = []
        for branch in t.branches:
            n = len(branch.names)
            inner = pren
            for _ in range(n):
                inner = inner.lift()
            body = ev.eval(v.env + tuple(VRigid(pren.cod + i) for i in range(n)), branch.body)
            branches.append(c.CaseBranch(branch.con, branch.names, self.rename(mid, inner, body), branch.binders))
        return c.Case(scrutinee, tuple(branches), t.span)
