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
Normalization by evaluation for the kernel.

Evaluation is call-by-need on globals: a global stays a neutral VGlobal
until whnf needs to look under it, and unfolding is refused when the
result would be a stuck case. Every unfolding spends one unit of fuel.
"""

import logging

from pydpq import core as c
from pydpq.diagnostics import EvalError, FuelExhausted
from pydpq.syntax import Icit
from pydpq.values import (VCirc, VCon, VConstraint, VDict, VExists, VFlex, VGlobal, VHole, VLam, VPair, VPi,
                          VRigid, VStuck, VTensor, VTyCon, VBang, VSTAR, VTYPE, VUNIT, Closure, VType, VUnitT,
                          VStar)

logger = logging.getLogger(__name__)

DEFAULT_FUEL = 100000


class MetaCtx:
    """
    Metavariable solutions with a trail so that failed attempts can be
    rolled back.
    """

    def __init__(self):
        self.solutions = []
        self.names = []
        self.trail = []

    def fresh(self, name=None):
        self.solutions.append(None)
        self.names.append(name)
        return len(self.solutions) - 1

    def solution(self, mid):
        return self.solutions[mid]

    def solve(self, mid, value):
        self.solutions[mid] = value
        self.trail.append(mid)

    def mark(self):
        return len(self.trail)

    def rollback(self, mark):
        while len(self.trail) > mark:
            self.solutions[self.trail.pop()] = None

    def unsolved(self):
        return [mid for mid, sol in enumerate(self.solutions) if sol is None]


class Evaluator:
    def __init__(self, metas=None, fuel=DEFAULT_FUEL):
        self.metas = metas if metas is not None else MetaCtx()
        self.fuel_limit = fuel
        self.fuel = fuel
        self.dispatch = {
            c.Var: self.eval_var,
            c.Global: self.eval_global,
            c.Con: self.eval_con,
            c.TyCon: self.eval_tycon,
            c.Lam: self.eval_lam,
            c.App: self.eval_app,
            c.Pi: self.eval_pi,
            c.Exists: self.eval_exists,
            c.Bang: self.eval_bang,
            c.Lift: self.eval_lift,
            c.Force: self.eval_force,
            c.Tensor: self.eval_tensor,
            c.UnitT: self.eval_unit_type,
            c.Star: self.eval_star,
            c.Pair: self.eval_pair,
            c.Circ: self.eval_circ,
            c.TypeU: self.eval_type,
            c.Let: self.eval_let,
            c.LetPair: self.eval_let_pair,
            c.Case: self.eval_case,
            c.Meta: self.eval_meta,
            c.InsertedMeta: self.eval_inserted_meta,
            c.Evidence: self.eval_evidence,
            c.Witness: self.eval_witness,
            c.Dict: self.eval_dict,
            c.ClassConstraint: self.eval_class_constraint,
        }

    def reset_fuel(self):
        self.fuel = self.fuel_limit

    def spend_fuel(self):
        self.fuel -= 1
        if self.fuel < 0:
            logger.warning("type-level evaluation ran out of fuel (%d unfoldings)", self.fuel_limit)
            raise FuelExhausted(self.fuel_limit)

    # Evaluation

    def eval(self, env, t):
        return self.dispatch[type(t)](env, t)

    def eval_var(self, env, t):
        return env[len(env) - 1 - t.ix]

    def eval_global(self, env, t):
        return VGlobal(t.defn)

    def eval_con(self, env, t):
        return VCon(t.info)

    def eval_tycon(self, env, t):
        return VTyCon(t.info)

    def eval_lam(self, env, t):
        return VLam(t.name, t.icit, Closure(env, t.body))

    def eval_app(self, env, t):
        return self.apply(self.eval(env, t.fn), self.eval(env, t.arg), t.icit)

    def eval_pi(self, env, t):
        return VPi(t.name, t.icit, self.eval(env, t.dom), Closure(env, t.cod))

    def eval_exists(self, env, t):
        return VExists(t.name, self.eval(env, t.dom), Closure(env, t.cod))

    def eval_bang(self, env, t):
        return VBang(self.eval(env, t.type))

    def eval_lift(self, env, t):
        return self.eval(env, t.term)

    def eval_force(self, env, t):
        return self.eval(env, t.term)

    def eval_tensor(self, env, t):
        return VTensor(self.eval(env, t.left), self.eval(env, t.right))

    def eval_unit_type(self, env, t):
        return VUNIT

    def eval_star(self, env, t):
        return VSTAR

    def eval_pair(self, env, t):
        return VPair(self.eval(env, t.left), self.eval(env, t.right))

    def eval_circ(self, env, t):
        return VCirc(self.eval(env, t.input), self.eval(env, t.output))

    def eval_type(self, env, t):
        return VTYPE

    def eval_let(self, env, t):
        return self.eval(env + (self.eval(env, t.value),), t.body)

    def eval_let_pair(self, env, t):
        scrutinee = self.whnf(self.eval(env, t.scrutinee))
        if isinstance(scrutinee, VPair):
            return self.eval(env + (scrutinee.left, scrutinee.right), t.body)
        return self.stuck(scrutinee, t, env)

    def eval_case(self, env, t):
        scrutinee = self.whnf(self.eval(env, t.scrutinee))
        if isinstance(scrutinee, VCon):
            return self.select_branch(env, t, scrutinee)
        return self.stuck(scrutinee, t, env)

    def stuck(self, scrutinee, t, env):
        return VStuck(scrutinee, t, env)

    def select_branch(self, env, t, scrutinee):
        info = scrutinee.info
        for branch in t.branches:
            if branch.con is info:
                return self.eval(env + scrutinee.args[info.nparams:], branch.body)
        raise EvalError(f"no branch for constructor {info.name}")

    def eval_meta(self, env, t):
        solution = self.metas.solution(t.mid)
        if solution is None:
            return VFlex(t.mid)
        return solution

    def eval_inserted_meta(self, env, t):
        v = self.eval_meta(env, t)
        for level, bound in enumerate(t.mask):
            if bound:
                v = self.apply(v, env[level], Icit.EXPLICIT)
        return v

    def eval_evidence(self, env, t):
        solution = t.hole.solution
        if solution is None:
            return VHole(t.hole)
        return self.eval(env, solution)

    def eval_witness(self, env, t):
        return VDict(None, ())

    def eval_dict(self, env, t):
        return VDict(t.instance, tuple(self.eval(env, m) for m in t.methods))

    def eval_class_constraint(self, env, t):
        return VConstraint(t.cls, self.eval(env, t.arg))

    # Application

    def instantiate(self, closure, v):
        return self.eval(closure.env + (v,), closure.body)

    def apply(self, f, arg, icit=Icit.EXPLICIT):
        if isinstance(f, VLam):
            return self.instantiate(f.closure, arg)
        if isinstance(f, VRigid):
            return VRigid(f.level, f.spine + ((arg, icit),))
        if isinstance(f, VFlex):
            return VFlex(f.mid, f.spine + ((arg, icit),))
        if isinstance(f, VGlobal):
            return VGlobal(f.defn, f.spine + ((arg, icit),))
        if isinstance(f, VStuck):
            return VStuck(f.scrutinee, f.term, f.env, f.spine + ((arg, icit),))
        if isinstance(f, VCon):
            return VCon(f.info, f.args + (arg,))
        if isinstance(f, VTyCon):
            return VTyCon(f.info, f.args + (arg,))
        raise EvalError(f"cannot apply {f!r}")

    def apply_spine(self, f, spine):
        for arg, icit in spine:
            f = self.apply(f, arg, icit)
        return f

    # Weak head normal forms

    def force(self, v):
        """
        Replace solved metavariables at the head.
        """
        while isinstance(v, VFlex):
            solution = self.metas.solution(v.mid)
            if solution is None:
                break
            v = self.apply_spine(solution, v.spine)
        return v

    def whnf(self, v):
        """
        Unfold globals and reduce stuck eliminations at the head. Each
        unfolding spends fuel; the chain of unfolded globals is walked in a
        loop and cached afterwards, innermost first.
        """
        chain = []
        while True:
            v = self.force(v)
            if isinstance(v, VGlobal):
                if v.unfolded is not None:
                    v = v.unfolded
                    break
                if v.defn.value is None:
                    break
                self.spend_fuel()
                chain.append(v)
                v = self.apply_spine(v.defn.value, v.spine)
                continue
            if isinstance(v, VStuck):
                scrutinee = self.whnf(v.scrutinee)
                if isinstance(scrutinee, (VCon, VPair)) and scrutinee is not v.scrutinee:
                    if isinstance(v.term, c.Case):
                        result = self.select_branch(v.env, v.term, scrutinee)
                    else:
                        result = self.eval(v.env + (scrutinee.left, scrutinee.right), v.term.body)
                    v = self.apply_spine(result, v.spine)
                    continue
            break
        return self.settle(chain, v)

    @staticmethod
    def settle(chain, result):
        # A global whose unfolding gets stuck stays folded.
        for g in reversed(chain):
            if isinstance(result, VStuck):
                result = g
            else:
                g.unfolded = result
        return result

    # Read-back

    def quote(self, level, v, unfold=False):
        v = self.whnf(v) if unfold else self.force(v)
        if isinstance(v, VRigid):
            return self.quote_spine(level, c.Var(level - v.level - 1), v.spine, unfold)
        if isinstance(v, VFlex):
            return self.quote_spine(level, c.Meta(v.mid), v.spine, unfold)
        if isinstance(v, VGlobal):
            return self.quote_spine(level, c.Global(v.defn), v.spine, unfold)
        if isinstance(v, VStuck):
            return self.quote_spine(level, self.quote_stuck(level, v, unfold), v.spine, unfold)
        if isinstance(v, VLam):
            body = self.instantiate(v.closure, VRigid(level))
            return c.Lam(v.name, v.icit, self.quote(level + 1, body, unfold))
        if isinstance(v, VPi):
            cod = self.instantiate(v.closure, VRigid(level))
            return c.Pi(v.name, v.icit, self.quote(level, v.dom, unfold), self.quote(level + 1, cod, unfold))
        if isinstance(v, VExists):
            cod = self.instantiate(v.closure, VRigid(level))
            return c.Exists(v.name, self.quote(level, v.dom, unfold), self.quote(level + 1, cod, unfold))
        if isinstance(v, VBang):
            return c.Bang(self.quote(level, v.type, unfold))
        if isinstance(v, VTensor):
            return c.Tensor(self.quote(level, v.left, unfold), self.quote(level, v.right, unfold))
        if isinstance(v, VUnitT):
            return c.UnitT()
        if isinstance(v, VStar):
            return c.Star()
        if isinstance(v, VPair):
            return c.Pair(self.quote(level, v.left, unfold), self.quote(level, v.right, unfold))
        if isinstance(v, VCirc):
            return c.Circ(self.quote(level, v.input, unfold), self.quote(level, v.output, unfold))
        if isinstance(v, VType):
            return c.TypeU()
        if isinstance(v, VTyCon):
            return c.apps(c.TyCon(v.info), [(self.quote(level, a, unfold), Icit.EXPLICIT) for a in v.args])
        if isinstance(v, VCon):
            hidden = v.info.nparams + v.info.nhidden
            args = [(self.quote(level, a, unfold), Icit.IRRELEVANT if i < hidden else Icit.EXPLICIT)
                    for i, a in enumerate(v.args)]
            return c.apps(c.Con(v.info), args)
        if isinstance(v, VConstraint):
            return c.ClassConstraint(v.cls, self.quote(level, v.arg, unfold))
        if isinstance(v, VDict):
            if v.instance is None:
                return c.Witness("builtin")
            return c.Dict(v.instance, tuple(self.quote(level, m, unfold) for m in v.methods))
        if isinstance(v, VHole):
            return c.Evidence(v.hole)
        raise EvalError(f"cannot read back {v!r}")

    def quote_spine(self, level, head, spine, unfold=False):
        for arg, icit in spine:
            head = c.App(head, self.quote(level, arg, unfold), icit)
        return head

    def quote_stuck(self, level, v, unfold=False):
        scrutinee = self.quote(level, v.scrutinee, unfold)
        t = v.term
        if isinstance(t, c.LetPair):
            body = self.eval(v.env + (VRigid(level), VRigid(level + 1)), t.body)
            return c.LetPair(t.names, scrutinee, self.quote(level + 2, body, unfold), t.binders)
        branches = []
        for branch in t.branches:
            n = len(branch.names)
            fresh = tuple(VRigid(level + i) for i in range(n))
            body = self.eval(v.env + fresh, branch.body)
            branches.append(c.CaseBranch(branch.con, branch.names, self.quote(level + n, body, unfold),
                                         branch.binders))
        return c.Case(scrutinee, tuple(branches), t.span)

    def normalize(self, level, v):
        """
        Full beta-delta normal form, read back as a core term.
        """
        return self.quote(level, v, unfold=True)

    def nf(self, t, env=()):
        self.reset_fuel()
        return self.normalize(len(env), self.eval(env, t))
