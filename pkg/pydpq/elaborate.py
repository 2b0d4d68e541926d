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
Bidirectional elaboration of desugared surface terms into core terms.

Implicit arguments become metavariables solved by unification, class
constraints become evidence holes resolved once the definition has been
elaborated, and `!` is introduced and eliminated silently. Linearity is
not checked here; see linearity.py.
"""

import logging

from pydpq import core as c
from pydpq import syntax as s
from pydpq.classes import Assumption, ClassOracle, Hole, contains_meta
from pydpq.diagnostics import CheckError, DiagnosticCode
from pydpq.env import ClassInfo, ConstructorInfo, DataInfo, DataKind, GlobalDef
from pydpq.pretty import pretty_value
from pydpq.unify import Unifier, UnifyError
from pydpq.values import (VBang, VCon, VConstraint, VExists, VFlex, VHole, VPi, VRigid, VTensor, VTyCon,
                          VTYPE, VUNIT, Closure)

logger = logging.getLogger(__name__)

Icit = s.Icit


class Ctx:
    """
    The local context: one entry per bound variable, indexed by level.

    `bound` marks the variables that are abstract (lambda, pattern and
    case binders); let-bound variables and variables fixed by a case
    refinement carry their value in `env` instead.
    """
    __slots__ = ("env", "types", "names", "bound", "irrelevant", "assumptions", "irr")

    def __init__(self, env=(), types=(), names=(), bound=(), irrelevant=(), assumptions=(), irr=False):
        self.env = env
        self.types = types
        self.names = names
        self.bound = bound
        self.irrelevant = irrelevant
        self.assumptions = assumptions
        self.irr = irr

    @property
    def level(self):
        return len(self.env)

    def extend(self, value, ty, name, bound, irrelevant=False, assumptions=None):
        return Ctx(self.env + (value,), self.types + (ty,), self.names + (name,), self.bound + (bound,),
                   self.irrelevant + (irrelevant,),
                   self.assumptions if assumptions is None else assumptions, self.irr)

    def bind(self, name, ty, span, irrelevant=False):
        info = c.BinderInfo(name, span, ty, irrelevant, self.assumptions)
        return self.extend(VRigid(self.level), ty, name, True, irrelevant), info

    def bind_instance(self, constraint, span):
        """
        Bind a variable holding evidence for a class constraint.
        """
        info = c.BinderInfo(None, span, constraint, False, self.assumptions)
        assumptions = self.assumptions
        if isinstance(constraint, VConstraint):
            assumptions = assumptions + (Assumption(constraint.cls, constraint.arg, self.level),)
        return self.extend(VRigid(self.level), constraint, None, True, False, assumptions), info

    def define(self, name, value, ty, span):
        info = c.BinderInfo(name, span, ty, False, self.assumptions)
        return self.extend(value, ty, name, False), info

    def irrelevant_mode(self):
        if self.irr:
            return self
        return Ctx(self.env, self.types, self.names, self.bound, self.irrelevant, self.assumptions, True)

    def lookup(self, name):
        for level in range(len(self.names) - 1, -1, -1):
            if self.names[level] == name:
                return level
        return None

    def display_names(self):
        return [name if name is not None else f"x{i}" for i, name in enumerate(self.names)]


def _name(name):
    return None if name in (None, "_") else name


class Elaborator:
    def __init__(self, module_env, evaluator):
        self.module_env = module_env
        self.ev = evaluator
        self.metas = evaluator.metas
        self.unifier = Unifier(evaluator)
        self.oracle = ClassOracle(evaluator, self.unifier, module_env.instances)
        self.holes = []
        self.temp_count = 0

    # Helpers

    def fresh_meta(self, ctx):
        return c.InsertedMeta(self.metas.fresh(), ctx.bound)

    def fresh_meta_value(self, ctx):
        return self.ev.eval(ctx.env, self.fresh_meta(ctx))

    def new_hole(self, ctx, constraint, span):
        if not isinstance(constraint, VConstraint):
            raise CheckError("a constraint must be a class applied to a type", span)
        hole = Hole(constraint.cls, constraint.arg, ctx.level, ctx.assumptions, span)
        self.holes.append(hole)
        return hole

    def temp_name(self):
        self.temp_count += 1
        return f"#{self.temp_count}"

    def pretty(self, ctx, v):
        return pretty_value(self.ev, ctx.level, v, ctx.display_names())

    def pretty_at(self, level, v):
        return pretty_value(self.ev, level, v)

    def unify(self, ctx, actual, expected, span):
        self.ev.reset_fuel()
        try:
            self.unifier.unify(ctx.level, actual, expected)
        except UnifyError:
            raise CheckError(f"type mismatch: expected {self.pretty(ctx, expected)}, "
                             f"found {self.pretty(ctx, actual)}", span, DiagnosticCode.TYPE_MISMATCH)

    def whnf(self, v):
        return self.ev.whnf(v)

    def eval(self, ctx, t):
        return self.ev.eval(ctx.env, t)

    def is_kind(self, ctx, ty):
        return self.oracle.ends_in_type(ctx.level, ty)

    # Implicit insertion

    def insert(self, ctx, t, ty, span):
        """
        Eliminate `!`, irrelevant, implicit and instance binders at the head
        of a type by forcing and by inserting metavariables and evidence.
        """
        while True:
            ty = self.whnf(ty)
            if isinstance(ty, VBang):
                t = c.Force(t)
                ty = ty.type
            elif isinstance(ty, VPi) and ty.icit in (Icit.IRRELEVANT, Icit.IMPLICIT):
                meta = self.fresh_meta(ctx)
                t = c.App(t, meta, ty.icit)
                ty = self.ev.instantiate(ty.closure, self.eval(ctx, meta))
            elif isinstance(ty, VPi) and ty.icit is Icit.INSTANCE:
                hole = self.new_hole(ctx, self.whnf(ty.dom), span)
                t = c.App(t, c.Evidence(hole), Icit.INSTANCE)
                ty = self.ev.instantiate(ty.closure, VHole(hole))
            else:
                return t, ty

    # Checking

    def check(self, ctx, e, ty):
        ty = self.whnf(ty)
        span = getattr(e, "span", None)
        if isinstance(ty, VPi) and ty.icit is not Icit.EXPLICIT:
            if ty.icit is Icit.INSTANCE:
                inner, info = ctx.bind_instance(self.whnf(ty.dom), span)
            else:
                inner, info = ctx.bind(ty.name, ty.dom, span, ty.icit is Icit.IRRELEVANT)
            body = self.check(inner, e, self.ev.instantiate(ty.closure, VRigid(ctx.level)))
            return c.Lam(ty.name, ty.icit, body, info)
        if isinstance(ty, VBang):
            return c.Lift(self.check(ctx, e, ty.type))
        if isinstance(e, s.Lam) and isinstance(ty, VPi):
            param = e.params[0]
            name = param.name if isinstance(param, s.PVar) else None
            inner, info = ctx.bind(name, ty.dom, param.span)
            body = self.check(inner, e.body, self.ev.instantiate(ty.closure, VRigid(ctx.level)))
            return c.Lam(name, Icit.EXPLICIT, body, info)
        if isinstance(e, s.Let):
            return self.elab_let(ctx, e, ty)
        if isinstance(e, s.Case):
            return self.elab_case(ctx, e.scrutinee, e.branches, ty, e.span)
        if isinstance(e, s.Tuple) and isinstance(ty, VTensor):
            left = self.check(ctx, e.items[0], ty.left)
            return c.Pair(left, self.check(ctx, e.items[1], ty.right))
        if isinstance(e, s.Tuple) and isinstance(ty, VExists):
            left = self.check(ctx, e.items[0], ty.dom)
            right_ty = self.ev.instantiate(ty.closure, self.eval(ctx, left))
            return c.Pair(left, self.check(ctx, e.items[1], right_ty))
        t, inferred = self.infer(ctx, e)
        t, inferred = self.insert(ctx, t, inferred, span)
        self.unify(ctx, inferred, ty, span)
        return t

    def check_type(self, ctx, e):
        return self.check(ctx.irrelevant_mode(), e, VTYPE)

    # Inference

    def infer(self, ctx, e):
        method = getattr(self, "infer_" + type(e).__name__, None)
        if method is None:
            raise CheckError(f"cannot infer a type for {type(e).__name__}", e.span)
        return method(ctx, e)

    def infer_Var(self, ctx, e):
        level = ctx.lookup(e.name)
        if level is not None:
            if ctx.irrelevant[level] and not ctx.irr:
                raise CheckError(f"{e.name} is bound by forall and cannot be used at runtime", e.span,
                                 DiagnosticCode.TYPE_MISMATCH)
            return c.Var(ctx.level - level - 1, e.span), ctx.types[level]
        return self.infer_global(e)

    def infer_Con(self, ctx, e):
        return self.infer_global(e)

    def infer_global(self, e):
        entry = self.module_env.lookup(e.name)
        if isinstance(entry, GlobalDef):
            return c.Global(entry), entry.type_value
        if isinstance(entry, ConstructorInfo):
            return c.Con(entry), entry.type_value
        if isinstance(entry, DataInfo):
            return c.TyCon(entry), entry.type_value
        if isinstance(entry, ClassInfo):
            raise CheckError(f"class {e.name} used as a type", e.span, DiagnosticCode.TYPE_MISMATCH)
        raise CheckError(f"{e.name} is not in scope", e.span, DiagnosticCode.SCOPE_ERROR)

    def infer_App(self, ctx, e):
        fn, fty = self.infer(ctx, e.fn)
        fn, fty = self.insert(ctx, fn, fty, e.span)
        fty = self.whnf(fty)
        if isinstance(fty, VFlex):
            dom = self.fresh_meta_value(ctx)
            inner, _ = ctx.bind(None, dom, e.span)
            cod = Closure(ctx.env, self.fresh_meta(inner))
            pi = VPi(None, Icit.EXPLICIT, dom, cod)
            self.unify(ctx, fty, pi, e.span)
            fty = pi
        if not isinstance(fty, VPi) or fty.icit is not Icit.EXPLICIT:
            raise CheckError(f"{self.pretty(ctx, fty)} is not a function type", e.span,
                             DiagnosticCode.TYPE_MISMATCH)
        arg_ctx = ctx.irrelevant_mode() if self.is_kind(ctx, fty.dom) else ctx
        arg = self.check(arg_ctx, e.arg, fty.dom)
        return c.App(fn, arg, Icit.EXPLICIT), self.ev.instantiate(fty.closure, self.eval(ctx, arg))

    def infer_Lam(self, ctx, e):
        param = e.params[0]
        name = param.name if isinstance(param, s.PVar) else None
        dom = self.fresh_meta_value(ctx)
        inner, info = ctx.bind(name, dom, param.span)
        body, body_ty = self.infer(inner, e.body)
        body_ty_term = self.ev.quote(inner.level, body_ty)
        ty = VPi(name, Icit.EXPLICIT, dom, Closure(ctx.env, body_ty_term))
        return c.Lam(name, Icit.EXPLICIT, body, info), ty

    def infer_Let(self, ctx, e):
        meta = self.fresh_meta_value(ctx)
        return self.elab_let(ctx, e, meta), meta

    def infer_Case(self, ctx, e):
        meta = self.fresh_meta_value(ctx)
        return self.elab_case(ctx, e.scrutinee, e.branches, meta, e.span), meta

    def infer_Tuple(self, ctx, e):
        left, left_ty = self.infer(ctx, e.items[0])
        left, left_ty = self.insert(ctx, left, left_ty, e.span)
        right, right_ty = self.infer(ctx, e.items[1])
        right, right_ty = self.insert(ctx, right, right_ty, e.span)
        return c.Pair(left, right), VTensor(left_ty, right_ty)

    def infer_UnitVal(self, ctx, e):
        return c.Star(), VUNIT

    def infer_TypeKind(self, ctx, e):
        return c.TypeU(), VTYPE

    def infer_UnitType(self, ctx, e):
        return c.UnitT(), VTYPE

    def infer_Pi(self, ctx, e):
        ctx = ctx.irrelevant_mode()
        dom = c.TypeU() if e.dom is None else self.check_type(ctx, e.dom)
        name = _name(e.names[0])
        inner, _ = ctx.bind(name, self.eval(ctx, dom), e.span)
        cod = self.check_type(inner, e.cod)
        return c.Pi(name, e.icit, dom, cod), VTYPE

    def infer_Exists(self, ctx, e):
        ctx = ctx.irrelevant_mode()
        dom = self.check_type(ctx, e.dom)
        name = _name(e.names[0])
        inner, _ = ctx.bind(name, self.eval(ctx, dom), e.span)
        return c.Exists(name, dom, self.check_type(inner, e.cod)), VTYPE

    def infer_Constrained(self, ctx, e):
        ctx = ctx.irrelevant_mode()
        constraints = []
        inner = ctx
        for constraint in e.constraints:
            term = self.elab_constraint(inner, constraint)
            constraints.append(term)
            inner, _ = inner.bind_instance(self.eval(inner, term), constraint.span)
        body = self.check_type(inner, e.body)
        for term in reversed(constraints):
            body = c.Pi(None, Icit.INSTANCE, term, body)
        return body, VTYPE

    def elab_constraint(self, ctx, e):
        head, args = s.spine(e)
        cls = self.module_env.lookup(head.name) if isinstance(head, (s.Con, s.Var)) else None
        if not isinstance(cls, ClassInfo) or len(args) != 1:
            raise CheckError("a constraint must be a class applied to one type", e.span,
                             DiagnosticCode.TYPE_MISMATCH)
        kind = VTYPE if cls.param_kind is None else self.ev.eval((), cls.param_kind)
        return c.ClassConstraint(cls, self.check(ctx.irrelevant_mode(), args[0], kind))

    def infer_Bang(self, ctx, e):
        return c.Bang(self.check_type(ctx, e.type)), VTYPE

    def infer_Tensor(self, ctx, e):
        return c.Tensor(self.check_type(ctx, e.left), self.check_type(ctx, e.right)), VTYPE

    def infer_CircType(self, ctx, e):
        return c.Circ(self.check_type(ctx, e.input), self.check_type(ctx, e.output)), VTYPE

    # Let bindings

    def elab_let(self, ctx, e, ty):
        binding = e.bindings[0]
        pattern = binding.pattern
        if isinstance(pattern, (s.PVar, s.PWild)):
            value, value_ty = self.infer(ctx, binding.expr)
            name = _name(getattr(pattern, "name", None))
            inner, info = ctx.define(name, self.eval(ctx, value), value_ty, pattern.span)
            body = self.check(inner, e.body, ty)
            return c.Let(name, value, body, info)
        if isinstance(pattern, s.PUnit):
            value = self.check(ctx, binding.expr, VUNIT)
            inner, info = ctx.define(None, self.eval(ctx, value), VUNIT, pattern.span)
            return c.Let(None, value, self.check(inner, e.body, ty), info)
        if isinstance(pattern, s.PTuple):
            return self.elab_let_pair(ctx, binding, e.body, ty, e.span)
        if isinstance(pattern, s.PCon):
            names, body = self.flatten_pattern_args(pattern.args, e.body, e.span)
            branch = s.Branch(pattern.con, names, body, pattern.span)
            return self.elab_case(ctx, binding.expr, [branch], ty, pattern.span, single=True)
        raise CheckError("unsupported pattern", pattern.span, DiagnosticCode.TYPE_MISMATCH)

    def flatten_pattern_args(self, patterns, body, span):
        """
        Replace nested patterns by fresh variables bound again by lets
        around the body.
        """
        names = []
        lets = []
        for p in patterns:
            if isinstance(p, s.PVar):
                names.append(p.name)
            elif isinstance(p, s.PWild):
                names.append("_")
            else:
                temp = self.temp_name()
                names.append(temp)
                lets.append(s.Binding(p, s.Var(temp, p.span), False, p.span))
        for binding in reversed(lets):
            body = s.Let([binding], body, span)
        return names, body

    def elab_let_pair(self, ctx, binding, body, ty, span):
        scrutinee, scrutinee_ty = self.infer(ctx, binding.expr)
        scrutinee, scrutinee_ty = self.insert(ctx, scrutinee, scrutinee_ty, span)
        scrutinee_ty = self.whnf(scrutinee_ty)
        if isinstance(scrutinee_ty, VFlex):
            pair_ty = VTensor(self.fresh_meta_value(ctx), self.fresh_meta_value(ctx))
            self.unify(ctx, scrutinee_ty, pair_ty, binding.span)
            scrutinee_ty = pair_ty
        (names, body) = self.flatten_pattern_args(binding.pattern.items, body, span)
        left_name, right_name = (_name(n) for n in names)
        items = binding.pattern.items
        if isinstance(scrutinee_ty, VTensor):
            inner, left_info = ctx.bind(left_name, scrutinee_ty.left, items[0].span)
            right_ty = scrutinee_ty.right
        elif isinstance(scrutinee_ty, VExists):
            inner, left_info = ctx.bind(left_name, scrutinee_ty.dom, items[0].span)
            right_ty = self.ev.instantiate(scrutinee_ty.closure, VRigid(ctx.level))
        else:
            raise CheckError(f"cannot split a value of type {self.pretty(ctx, scrutinee_ty)} into a pair",
                             binding.span, DiagnosticCode.TYPE_MISMATCH)
        inner, right_info = inner.bind(right_name, right_ty, items[1].span)
        body_t = self.check(inner, body, ty)
        return c.LetPair((left_name, right_name), scrutinee, body_t, (left_info, right_info))

    # Case analysis

    def elab_case(self, ctx, scrutinee_e, branches, ty, span, single=False):
        scrutinee, scrutinee_ty = self.infer(ctx, scrutinee_e)
        scrutinee, scrutinee_ty = self.insert(ctx, scrutinee, scrutinee_ty, span)
        scrutinee_ty = self.whnf(scrutinee_ty)
        if not isinstance(scrutinee_ty, VTyCon) or scrutinee_ty.info.kind is DataKind.OBJECT \
                or len(scrutinee_ty.args) != scrutinee_ty.info.arity:
            raise CheckError(f"cannot match on a value of type {self.pretty(ctx, scrutinee_ty)}", span,
                             DiagnosticCode.TYPE_MISMATCH)
        data = scrutinee_ty.info
        written = {}
        for branch in branches:
            entry = self.module_env.lookup(branch.con)
            if not isinstance(entry, ConstructorInfo) or entry.data is not data:
                raise CheckError(f"{branch.con} is not a constructor of {data.name}", branch.span,
                                 DiagnosticCode.TYPE_MISMATCH)
            if entry.name in written:
                raise CheckError(f"UnreachableBranch {branch.con} is matched twice", branch.span,
                                 DiagnosticCode.TYPE_MISMATCH)
            written[entry.name] = branch
        scrutinee_level = None
        if isinstance(scrutinee, c.Var):
            level = ctx.level - scrutinee.ix - 1
            if ctx.bound[level]:
                scrutinee_level = level
        params = scrutinee_ty.args[:data.nparams]
        indices = scrutinee_ty.args[data.nparams:]
        elaborated = []
        for con in data.constructors:
            branch = written.get(con.name)
            result = self.elab_branch(ctx, con, branch, params, indices, scrutinee_level, ty, span, single)
            if result is not None:
                elaborated.append(result)
        if not elaborated:
            raise CheckError(f"no constructor of {data.name} can match here", span,
                             DiagnosticCode.TYPE_MISMATCH)
        return c.Case(scrutinee, tuple(elaborated), span)

    def elab_branch(self, ctx, con, branch, params, indices, scrutinee_level, ty, span, single):
        branch_span = branch.span if branch is not None else span
        if branch is not None and len(branch.names) != con.nfields:
            raise CheckError(f"{con.name} has {con.nfields} fields, the pattern binds {len(branch.names)}",
                             branch.span, DiagnosticCode.TYPE_MISMATCH)
        con_ty = con.type_value
        for p in params:
            con_ty = self.ev.instantiate(self.whnf(con_ty).closure, p)
        inner = ctx
        binders = []
        names = []
        args = list(params)
        for i in range(con.nhidden):
            con_ty = self.whnf(con_ty)
            hidden_name = con.hidden_names[i] if i < len(con.hidden_names) else None
            inner, info = inner.bind(hidden_name, con_ty.dom, branch_span, irrelevant=True)
            binders.append(info)
            names.append(hidden_name)
            args.append(VRigid(inner.level - 1))
            con_ty = self.ev.instantiate(con_ty.closure, args[-1])
        for i in range(con.nfields):
            con_ty = self.whnf(con_ty)
            field_name = _name(branch.names[i]) if branch is not None else None
            inner, info = inner.bind(field_name, con_ty.dom, branch_span)
            binders.append(info)
            names.append(field_name)
            args.append(VRigid(inner.level - 1))
            con_ty = self.ev.instantiate(con_ty.closure, args[-1])
        result_ty = self.whnf(con_ty)
        refinement = self.refine(inner, list(zip(result_ty.args[len(params):], indices)))
        if refinement is None:
            if branch is not None:
                raise CheckError(f"UnreachableBranch {con.name} cannot match a value of this type",
                                 branch.span, DiagnosticCode.TYPE_MISMATCH)
            return None
        if branch is None:
            message = f"MissingBranch {con.name} is not matched"
            if single:
                message = f"MissingBranch {con.name} can also match here, use a case expression"
            raise CheckError(message, span, DiagnosticCode.TYPE_MISMATCH)
        env, mapped = refinement
        if scrutinee_level is not None and scrutinee_level not in mapped:
            env[scrutinee_level] = VCon(con, tuple(args))
            mapped.add(scrutinee_level)
        refined = self.refined_ctx(inner, env, mapped)
        expected = self.reevaluate(inner, refined.env, ty)
        body = self.check(refined, branch.body, expected)
        return c.CaseBranch(con, tuple(names), body, tuple(binders))

    def reevaluate(self, ctx, env, v):
        return self.ev.eval(tuple(env), self.ev.quote(ctx.level, v))

    def refine(self, ctx, pairs):
        """
        Unify constructor indices, solving bound variables. Returns the
        refined environment and the levels it fixes, or None when the
        indices can never agree.
        """
        env = list(ctx.env)
        free = set(level for level in range(ctx.level) if ctx.bound[level])
        mapped = set()
        work = list(pairs)
        while work:
            a, b = work.pop(0)
            a = self.whnf(self.reevaluate(ctx, env, a))
            b = self.whnf(self.reevaluate(ctx, env, b))
            a_var = isinstance(a, VRigid) and not a.spine and a.level in free
            b_var = isinstance(b, VRigid) and not b.spine and b.level in free
            if a_var and b_var:
                if a.level == b.level:
                    continue
                if a.level < b.level:
                    a, b = b, a
            elif b_var:
                a, b = b, a
                a_var = True
            if a_var:
                if self.occurs_under_constructors(a.level, b):
                    return None
                if ctx.level - a.level - 1 in c.free_indices(self.ev.quote(ctx.level, b)):
                    continue
                env[a.level] = b
                free.discard(a.level)
                mapped.add(a.level)
                continue
            if isinstance(a, VCon) and isinstance(b, VCon):
                if a.info is not b.info:
                    return None
                work.extend(zip(a.args, b.args))
        for _ in range(len(mapped)):
            env = [self.reevaluate(ctx, env, v) if level in mapped else v for level, v in enumerate(env)]
        return env, mapped

    def occurs_under_constructors(self, level, v):
        # n = S n has no solution; n = f n may still have one.
        v = self.whnf(v)
        if isinstance(v, VRigid):
            return v.level == level and not v.spine
        if isinstance(v, VCon):
            return any(self.occurs_under_constructors(level, arg) for arg in v.args)
        return False

    def refined_ctx(self, ctx, env, mapped):
        env = tuple(env)
        types = tuple(self.reevaluate(ctx, env, t) for t in ctx.types)
        bound = tuple(b and level not in mapped for level, b in enumerate(ctx.bound))
        assumptions = tuple(Assumption(a.cls, self.reevaluate(ctx, env, a.arg), a.level)
                            for a in ctx.assumptions)
        return Ctx(env, types, ctx.names, bound, ctx.irrelevant, assumptions, ctx.irr)

    # Definitions

    def elab_equation(self, ctx, ty, params, body, span):
        """
        Elaborate `name params = body` against its declared type: `!` is
        introduced, irrelevant and instance binders are bound without a
        parameter, explicit and implicit binders take the next parameter.
        """
        ty = self.whnf(ty)
        if isinstance(ty, VBang):
            return c.Lift(self.elab_equation(ctx, ty.type, params, body, span))
        if isinstance(ty, VPi):
            if ty.icit is Icit.INSTANCE:
                inner, info = ctx.bind_instance(self.whnf(ty.dom), span)
                rest = params
                name = None
            elif ty.icit is Icit.IRRELEVANT:
                name = ty.name
                inner, info = ctx.bind(name, ty.dom, span, irrelevant=True)
                rest = params
            elif params:
                name = _name(params[0])
                inner, info = ctx.bind(name, ty.dom, span)
                rest = params[1:]
            else:
                return self.check(ctx, body, ty)
            cod = self.ev.instantiate(ty.closure, VRigid(ctx.level))
            return c.Lam(name, ty.icit, self.elab_equation(inner, cod, rest, body, span), info)
        if params:
            raise CheckError(f"the equation has more parameters than its type allows", span,
                             DiagnosticCode.TYPE_MISMATCH)
        return self.check(ctx, body, ty)

    def solve_holes(self):
        """
        Resolve pending evidence until no more progress is made.
        """
        progress = True
        while progress:
            progress = False
            for hole in self.holes:
                if hole.solution is None:
                    self.ev.reset_fuel()
                    solution = self.oracle.resolve(hole)
                    if solution is not None:
                        hole.solution = solution
                        progress = True
        pending = [hole for hole in self.holes if hole.solution is None]
        self.holes = []
        if pending:
            hole = pending[0]
            raise CheckError(f"cannot resolve {hole.cls.name} ({self.pretty_at(hole.level, hole.arg)}): "
                             f"the type is ambiguous", hole.span, DiagnosticCode.CLASS_RESOLUTION_ERROR)

    # Metavariable substitution

    def zonk(self, level, t, span=None):
        if isinstance(t, (c.Meta, c.InsertedMeta)):
            v = self.ev.force(self.ev.eval(tuple(VRigid(i) for i in range(level)), t))
            quoted = self.ev.quote(level, v)
            if contains_meta(quoted):
                raise CheckError("cannot infer an implicit argument", span, DiagnosticCode.TYPE_MISMATCH)
            return self.zonk(level, quoted, span)
        if isinstance(t, c.Evidence):
            if t.hole.solution is None:
                raise CheckError(f"unresolved {t.hole.cls.name} constraint", t.hole.span,
                                 DiagnosticCode.CLASS_RESOLUTION_ERROR)
            return self.zonk(level, t.hole.solution, span)
        if isinstance(t, c.Lam):
            return c.Lam(t.name, t.icit, self.zonk(level + 1, t.body, span), t.binder)
        if isinstance(t, c.Pi):
            return c.Pi(t.name, t.icit, self.zonk(level, t.dom, span), self.zonk(level + 1, t.cod, span))
        if isinstance(t, c.Exists):
            return c.Exists(t.name, self.zonk(level, t.dom, span), self.zonk(level + 1, t.cod, span))
        if isinstance(t, c.Let):
            return c.Let(t.name, self.zonk(level, t.value, span), self.zonk(level + 1, t.body, span), t.binder)
        if isinstance(t, c.LetPair):
            return c.LetPair(t.names, self.zonk(level, t.scrutinee, span), self.zonk(level + 2, t.body, span),
                             t.binders)
        if isinstance(t, c.Case):
            branches = tuple(c.CaseBranch(b.con, b.names, self.zonk(level + len(b.names), b.body, span),
                                          b.binders)
                             for b in t.branches)
            return c.Case(self.zonk(level, t.scrutinee, span), branches, t.span)
        if isinstance(t, c.App):
            return c.App(self.zonk(level, t.fn, span), self.zonk(level, t.arg, span), t.icit)
        if isinstance(t, c.Dict):
            return c.Dict(t.instance, tuple(self.zonk(level, m, span) for m in t.methods))
        if isinstance(t, (c.Lift, c.Force)):
            return type(t)(self.zonk(level, t.term, span))
        if isinstance(t, c.Bang):
            return c.Bang(self.zonk(level, t.type, span))
        if isinstance(t, (c.Tensor, c.Pair)):
            return type(t)(self.zonk(level, t.left, span), self.zonk(level, t.right, span))
        if isinstance(t, c.Circ):
            return c.Circ(self.zonk(level, t.input, span), self.zonk(level, t.output, span))
        if isinstance(t, c.ClassConstraint):
            return c.ClassConstraint(t.cls, self.zonk(level, t.arg, span))
        return t
