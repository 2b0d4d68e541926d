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
Declaration checking: elaborates each declaration of a module in order
and commits it to the module environment.

A declaration that fails is rolled back completely and reported as one
diagnostic; checking continues with the next declaration.
"""

import contextlib
import logging

from pydpq import core as c
from pydpq import syntax as s
from pydpq.datatypes import DataDeclarations
from pydpq.desugar import desugar_expr
from pydpq.diagnostics import NO_SPAN, CheckError, DiagnosticCode, DiagnosticError, FuelExhausted
from pydpq.elaborate import Ctx, Elaborator
from pydpq.env import (ClassInfo, DataInfo, GateInfo, GlobalDef, GlobalKind, InstanceInfo)
from pydpq.linearity import LinearityChecker
from pydpq.parser import parse_expression_source
from pydpq.shapes import leaves, shape_of
from pydpq.syntax import Icit
from pydpq.unify import UnifyError
from pydpq.values import VConstraint, VPi, VRigid, VSTAR, VTyCon

logger = logging.getLogger(__name__)

BUILTIN_TYPES = {
    "box": "(a : Type) -> forall (b : Type) -> (Simple a, Simple b) => !(a -> b) -> Circ(a, b)",
    "unbox": "forall (a b : Type) -> (Simple a, Simple b) => Circ(a, b) -> !(a -> b)",
    "reverse": "forall (a b : Type) -> (Simple a, Simple b) => Circ(a, b) -> Circ(b, a)",
    "existsBox": "(a : Type) -> forall (b : Type) -> (Simple a, Parameter b) => (p : b -> Type) -> "
                 "!(a -> (n : b) * p n) -> (n : b) * ((Simple (p n)) => Circ(a, p n))",
}

GLYPHS = frozenset(["box", "oplus", "dot", "cdot", "init", "term", "meas", "discard"])


@contextlib.contextmanager
def reported(span):
    """
    Turn kernel failures raised while checking a declaration into
    diagnostics located at the declaration.
    """
    try:
        yield
    except DiagnosticError as e:
        raise e.located(span)
    except FuelExhausted as e:
        raise CheckError(str(e), span, DiagnosticCode.FUEL_EXHAUSTED,
                         notes=["raise the limit with --fuel"]) from e
    except UnifyError as e:
        raise CheckError(str(e), span, DiagnosticCode.TYPE_MISMATCH) from e


class Checker:
    def __init__(self, module_env, evaluator):
        self.module_env = module_env
        self.ev = evaluator
        self.elab = Elaborator(module_env, evaluator)
        self.oracle = self.elab.oracle
        self.linearity = LinearityChecker(evaluator, self.oracle)
        self.data = DataDeclarations(module_env, self.elab)
        self.handlers = {
            s.ObjectDecl: self.data.check_object,
            s.DataDecl: self.data.check_data,
            s.SimpleDecl: self.data.check_simple,
            s.GateDecl: self.check_gate,
            s.ClassDecl: self.check_class,
            s.InstanceDecl: self.check_instance,
            s.TermDef: self.check_term_def,
            s.AdjointDecl: self.check_adjoint,
            s.RenderDecl: self.check_render,
        }

    def check_module(self, decls):
        """
        Check desugared declarations in order; returns the diagnostics.
        """
        diagnostics = []
        for decl in decls:
            snapshot = self.module_env.snapshot()
            try:
                with reported(decl.span):
                    self.ev.reset_fuel()
                    self.handlers[type(decl)](decl)
            except DiagnosticError as e:
                self.module_env.restore(snapshot)
                self.elab.holes = []
                diagnostics.append(e.diagnostic)
                logger.debug("rejected declaration at %s: %s", decl.span, e.message)
            else:
                logger.debug("committed %s", getattr(decl, "name", type(decl).__name__))
        return diagnostics

    # Shared steps

    def finish(self, level, term, span):
        self.elab.solve_holes()
        term = self.elab.zonk(level, term, span)
        if level == 0:
            self.linearity.check(term)
        return term

    def elab_closed_type(self, e):
        term = self.elab.check_type(Ctx(), e)
        self.elab.solve_holes()
        return self.elab.zonk(0, term, e.span)

    def define_global(self, name, kind, type_term, span, **extra):
        defn = GlobalDef(name, kind, type_term, self.ev.eval((), type_term), span=span, **extra)
        self.module_env.define(name, defn, span)
        return defn

    # Built-ins

    def install_builtins(self):
        for name, source in BUILTIN_TYPES.items():
            ty = self.elab_closed_type(desugar_expr(parse_expression_source(source, "<builtin>")))
            self.define_global(name, GlobalKind.BUILTIN, ty, NO_SPAN, builtin=name)

    # Definitions

    def check_term_def(self, d):
        ty = self.elab_closed_type(d.declared_type)
        ty_value = self.ev.eval((), ty)
        if not self.oracle.is_parameter(0, ty_value):
            raise CheckError(f"top-level definition {d.name} must have a parameter type; "
                             f"mark a function type with !", d.span, DiagnosticCode.PARAMETER_ERROR)
        defn = self.define_global(d.name, GlobalKind.DEFINITION, ty, d.span)
        term = self.elab.elab_equation(Ctx(), ty_value, d.params, d.body, d.body_span)
        defn.term = self.finish(0, term, d.body_span)
        defn.value = self.ev.eval((), defn.term)
        return defn

    def check_expression(self, expr, insert=True):
        """
        Elaborate a closed expression; returns its core term and type. With
        insert=False the type is reported before any implicit argument is
        supplied.
        """
        with reported(getattr(expr, "span", NO_SPAN)):
            self.ev.reset_fuel()
            ctx = Ctx()
            term, ty = self.elab.infer(ctx, expr)
            if insert:
                term, ty = self.elab.insert(ctx, term, ty, expr.span)
            try:
                term = self.finish(0, term, expr.span)
                ty_term = self.elab.zonk(0, self.ev.quote(0, ty), expr.span)
            finally:
                self.elab.holes = []
        return term, self.ev.eval((), ty_term)

    # Gates

    def wire_kinds(self, values):
        return [kind for v in values for kind in leaves(shape_of(self.ev, v))]

    def check_gate(self, d):
        ctx = Ctx().irrelevant_mode()
        params = []
        for kind in d.param_kinds:
            term = self.elab.zonk(ctx.level, self.elab.check_type(ctx, kind), kind.span)
            value = self.ev.eval(ctx.env, term)
            if not self.oracle.is_parameter(ctx.level, value):
                raise CheckError(f"gate parameters must have parameter types", kind.span,
                                 DiagnosticCode.PARAMETER_ERROR)
            params.append(term)
            ctx, _ = ctx.bind(None, value, kind.span)
        wire = self.elab.zonk(ctx.level, self.elab.check_type(ctx, d.wire_type), d.wire_type.span)
        inputs = []
        ty = self.ev.whnf(self.ev.eval(ctx.env, wire))
        level = ctx.level
        while isinstance(ty, VPi) and ty.icit is Icit.EXPLICIT:
            inputs.append(ty.dom)
            ty = self.ev.whnf(self.ev.instantiate(ty.closure, VRigid(level)))
            level += 1
        for v in inputs + [ty]:
            if not self.oracle.is_simple(level, v):
                raise CheckError("the wires of a gate must have simple types", d.wire_type.span,
                                 DiagnosticCode.SIMPLENESS_ERROR)
        full = wire
        for term in reversed(params):
            full = c.Pi(None, Icit.EXPLICIT, term, full)
        gate = GateInfo(d.name, len(params), tuple(inputs), ty)
        return self.define_global(d.name, GlobalKind.GATE, c.Bang(full), d.span, gate=gate)

    def lookup_gate(self, name, span):
        defn = self.module_env.lookup(name)
        if not isinstance(defn, GlobalDef) or defn.gate is None:
            raise CheckError(f"{name} is not a gate", span, DiagnosticCode.SCOPE_ERROR)
        return defn.gate

    def check_adjoint(self, d):
        gates = [self.lookup_gate(name, d.span) for name in d.names]
        first, second = gates[0], gates[-1]
        if first.nparams != second.nparams or \
                self.wire_kinds(first.inputs) != self.wire_kinds([second.output]) or \
                self.wire_kinds(second.inputs) != self.wire_kinds([first.output]):
            raise CheckError(f"{second.name} cannot be the adjoint of {first.name}: the wires do not match",
                             d.span, DiagnosticCode.TYPE_MISMATCH)
        first = self.module_env.writable_gate(first)
        second = self.module_env.writable_gate(second)
        first.adjoint = second
        second.adjoint = first

    def check_render(self, d):
        gate = self.lookup_gate(d.gate, d.span)
        positions = max(len(self.wire_kinds(gate.inputs)), len(self.wire_kinds([gate.output])))
        unknown = [g for g in d.glyphs if g not in GLYPHS]
        if unknown:
            raise CheckError(f"unknown glyph {unknown[0]}", d.span, DiagnosticCode.SCOPE_ERROR)
        if len(d.glyphs) > positions:
            raise CheckError(f"{gate.name} has {positions} wires but {len(d.glyphs)} glyphs", d.span,
                             DiagnosticCode.TYPE_MISMATCH)
        gate = self.module_env.writable_gate(gate)
        gate.glyphs = tuple(d.glyphs)
        gate.label = d.label

    # Classes and instances

    def check_class(self, d):
        if len(d.params) != 1:
            raise CheckError("a class has exactly one parameter", d.span, DiagnosticCode.TYPE_MISMATCH)
        param = d.params[0]
        kind = c.TypeU() if param.kind is None else self.elab_closed_type(param.kind)
        cls = ClassInfo(d.name, param.name, kind, span=d.span)
        self.module_env.define(d.name, cls, d.span)
        ctx, _ = Ctx().bind(param.name, self.ev.eval((), kind), d.span, irrelevant=True)
        ctx, _ = ctx.bind_instance(VConstraint(cls, VRigid(0)), d.span)
        for index, sig in enumerate(d.methods):
            method_ty = self.elab.check_type(ctx, sig.type)
            self.elab.solve_holes()
            method_ty = self.elab.zonk(ctx.level, method_ty, sig.span)
            cls.methods.append((sig.name, method_ty))
            selector = c.Bang(c.Pi(param.name, Icit.IRRELEVANT, kind,
                                   c.Pi(None, Icit.INSTANCE, c.ClassConstraint(cls, c.Var(0)), method_ty)))
            self.define_global(sig.name, GlobalKind.METHOD, selector, sig.span, method=(cls, index))
        return cls

    def check_instance(self, d):
        cls = self.module_env.lookup(d.class_name)
        if not isinstance(cls, ClassInfo):
            raise CheckError(f"{d.class_name} is not a class", d.span, DiagnosticCode.SCOPE_ERROR)
        if cls.builtin:
            raise CheckError(f"instances of {cls.name} are derived from declarations and cannot be written",
                             d.span, DiagnosticCode.CLASS_RESOLUTION_ERROR)
        head, args = s.spine(d.head)
        data = self.module_env.lookup(head.name) if isinstance(head, s.Con) else None
        if not isinstance(data, DataInfo):
            raise CheckError("an instance head is a type constructor applied to variables", d.head.span,
                             DiagnosticCode.TYPE_MISMATCH)
        names = [a.name for a in args if isinstance(a, s.Var)]
        if len(names) != len(args) or len(set(names)) != len(names) or len(names) > data.nparams:
            raise CheckError("an instance head is a type constructor applied to distinct variables",
                             d.head.span, DiagnosticCode.TYPE_MISMATCH)

        ctx = Ctx()
        binders = []
        kind = data.type_value
        for name in names:
            kind = self.ev.whnf(kind)
            ctx, info = ctx.bind(name, kind.dom, d.head.span, irrelevant=True)
            binders.append(info)
            kind = self.ev.instantiate(kind.closure, VRigid(ctx.level - 1))
        self.elab.unify(ctx, kind, self.ev.eval((), cls.param_kind), d.head.span)
        head_value = VTyCon(data, tuple(VRigid(i) for i in range(len(names))))
        nvars = len(names)

        premises = []
        for constraint in d.constraints:
            term = self.elab.zonk(nvars, self.elab.elab_constraint(ctx, constraint), constraint.span)
            premises.append((term.cls, term.arg))
        instance = InstanceInfo(cls, data, nvars, tuple(premises), span=d.span)

        ty_ctx = ctx
        pis = []
        for premise_cls, arg in premises:
            constraint = VConstraint(premise_cls, self.ev.eval(ctx.env, arg))
            pis.append(self.ev.quote(ty_ctx.level, constraint))
            ty_ctx, info = ty_ctx.bind_instance(constraint, d.span)
            binders.append(info)
        ty = self.ev.quote(ty_ctx.level, VConstraint(cls, head_value))
        for premise in reversed(pis):
            ty = c.Pi(None, Icit.INSTANCE, premise, ty)
        for level in reversed(range(nvars)):
            ty = c.Pi(names[level], Icit.IRRELEVANT, self.ev.quote(level, binders[level].type), ty)
        defn = GlobalDef(f"{cls.name} {data.name}", GlobalKind.INSTANCE, ty, self.ev.eval((), ty), span=d.span)
        instance.defn = defn
        self.module_env.instances.add(instance)

        methods = self.instance_methods(cls, d, ty_ctx, head_value)
        term = c.Dict(instance, tuple(methods))
        for premise, info in reversed(list(zip(pis, binders[nvars:]))):
            term = c.Lam(None, Icit.INSTANCE, term, info)
        for name, info in reversed(list(zip(names, binders))):
            term = c.Lam(name, Icit.IRRELEVANT, term, info)
        self.linearity.check(term)
        defn.term = term
        defn.value = self.ev.eval((), term)
        return instance

    def instance_methods(self, cls, d, ctx, head_value):
        equations = {}
        for eq in d.methods:
            if eq.name in equations:
                raise CheckError(f"method {eq.name} is defined twice", eq.span, DiagnosticCode.SCOPE_ERROR)
            try:
                cls.method_index(eq.name)
            except KeyError:
                raise CheckError(f"{eq.name} is not a method of {cls.name}", eq.span,
                                 DiagnosticCode.SCOPE_ERROR) from None
            equations[eq.name] = eq
        methods = []
        for name, method_ty in cls.methods:
            eq = equations.get(name)
            if eq is None:
                raise CheckError(f"the instance does not define {name}", d.span, DiagnosticCode.TYPE_MISMATCH)
            expected = self.ev.eval((head_value, VSTAR), method_ty)
            term = self.elab.elab_equation(ctx, expected, eq.params, eq.body, eq.span)
            methods.append(self.finish(ctx.level, term, eq.span))
        return methods
