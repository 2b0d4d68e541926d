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
Objects, algebraic data types and simple type families.

A simple family is defined by one clause per constructor of its index
type. Each clause has exactly one constructor and may only recurse on a
variable of the clause's index pattern, so the wire layout of a value is
determined by the index alone. Simple and Parameter membership of the new
type is derived here and stored as premises on its DataInfo.
"""

import logging

from pydpq import core as c
from pydpq import syntax as s
from pydpq.classes import Assumption
from pydpq.diagnostics import CheckError, DiagnosticCode
from pydpq.elaborate import Ctx
from pydpq.env import PARAMETER, SIMPLE, ConstructorInfo, DataInfo, DataKind
from pydpq.syntax import Icit
from pydpq.values import VRigid, VTyCon

logger = logging.getLogger(__name__)


def ill_formed(reason, message, span):
    return CheckError(f"{reason}: {message}", span, DiagnosticCode.SIMPLE_DECL_ILL_FORMED)


class DataDeclarations:
    def __init__(self, module_env, elaborator):
        self.module_env = module_env
        self.elab = elaborator
        self.ev = elaborator.ev
        self.oracle = elaborator.oracle

    # Shared helpers

    def elab_params(self, params):
        """
        Elaborate `(a : K)` parameters; returns the context binding them
        irrelevantly and their kinds as core terms.
        """
        ctx = Ctx().irrelevant_mode()
        kinds = []
        for p in params:
            kind = c.TypeU() if p.kind is None else self.elab.zonk(ctx.level, self.elab.check_type(ctx, p.kind))
            kinds.append(kind)
            ctx, _ = ctx.bind(p.name, self.ev.eval(ctx.env, kind), p.span, irrelevant=True)
        return ctx, kinds

    def type_positions(self, kinds):
        return tuple(i for i, kind in enumerate(kinds) if isinstance(kind, c.TypeU))

    def elab_fields(self, ctx, fields):
        """
        Elaborate constructor fields; each field is checked one binder
        deeper than the previous one so that the results can be chained
        into a Pi type.
        """
        terms = []
        values = []
        for f in fields:
            term = self.elab.check_type(ctx, f)
            self.elab.solve_holes()
            term = self.elab.zonk(ctx.level, term, f.span)
            terms.append(term)
            values.append((ctx.level, self.ev.eval(ctx.env, term), f.span))
            ctx, _ = ctx.bind(None, values[-1][1], f.span)
        return terms, values

    def derive_parameter(self, info, kinds, field_values, field_terms):
        """
        The type is a Parameter when every field is, assuming its type
        parameters are; the premises are the type parameters that occur
        in some field.
        """
        positions = self.type_positions(kinds)
        info.parameter_premises = positions
        assumptions = tuple(Assumption(PARAMETER, VRigid(i), i) for i in positions)
        for level, value, _ in field_values:
            if not self.oracle.is_parameter(level, value, assumptions):
                info.parameter_premises = None
                return
        used = set()
        for (level, _, _), term in zip(field_values, field_terms):
            used |= {level - ix - 1 for ix in c.free_indices(term)}
        info.parameter_premises = tuple(i for i in positions if i in used)

    def kind_type(self, kinds, result):
        ty = result
        for kind, name in reversed(kinds):
            ty = c.Pi(name, Icit.EXPLICIT, kind, ty)
        return ty

    # Declarations

    def check_object(self, d):
        info = DataInfo(d.name, DataKind.OBJECT, type=c.TypeU(), type_value=self.ev.eval((), c.TypeU()),
                        span=d.span)
        self.module_env.define(d.name, info, d.span)
        return info

    def check_data(self, d):
        ctx, kinds = self.elab_params(d.params)
        names = tuple(p.name for p in d.params)
        ty = self.kind_type(list(zip(kinds, names)), c.TypeU())
        info = DataInfo(d.name, DataKind.DATA, len(d.params), names, tuple(kinds), 0, ty,
                        self.ev.eval((), ty), span=d.span)
        self.module_env.define(d.name, info, d.span)
        all_values = []
        all_terms = []
        for tag, con in enumerate(d.constructors):
            terms, values = self.elab_fields(ctx, con.fields)
            all_terms += terms
            all_values += values
            nparams = len(kinds)
            depth = nparams + len(terms)
            result = c.apps(c.TyCon(info), [(c.Var(depth - j - 1), Icit.EXPLICIT) for j in range(nparams)])
            con_ty = result
            for term in reversed(terms):
                con_ty = c.Pi(None, Icit.EXPLICIT, term, con_ty)
            for kind, name in reversed(list(zip(kinds, names))):
                con_ty = c.Pi(name, Icit.IRRELEVANT, kind, con_ty)
            con_info = ConstructorInfo(con.name, info, tag, con_ty, self.ev.eval((), con_ty), nparams, 0,
                                       len(terms), span=con.span)
            info.constructors.append(con_info)
            self.module_env.define(con.name, con_info, con.span)
        self.derive_parameter(info, kinds, all_values, all_terms)
        logger.debug("data %s: parameter premises %s", d.name, info.parameter_premises)
        return info

    def check_simple(self, d):
        ctx, kinds = self.elab_params(d.params)
        names = tuple(p.name for p in d.params)
        nparams = len(kinds)
        index_kind = self.elab.zonk(nparams, self.elab.check_type(ctx, d.index_kind), d.index_kind.span)
        if not isinstance(index_kind, c.Pi) or index_kind.icit is not Icit.EXPLICIT \
                or not isinstance(index_kind.cod, c.TypeU):
            raise CheckError("a simple type is indexed by a single data type: expected a kind `D -> Type`",
                             d.index_kind.span, DiagnosticCode.TYPE_MISMATCH)
        index_dom = self.ev.whnf(self.ev.eval(ctx.env, index_kind.dom))
        if not isinstance(index_dom, VTyCon) or index_dom.info.kind is not DataKind.DATA:
            raise CheckError("the index of a simple type must be a data type", d.index_kind.span,
                             DiagnosticCode.TYPE_MISMATCH)
        index_data = index_dom.info
        ty = self.kind_type(list(zip(kinds, names)), index_kind)
        info = DataInfo(d.name, DataKind.SIMPLE, nparams, names, tuple(kinds), 1, ty, self.ev.eval((), ty),
                        span=d.span)
        self.module_env.define(d.name, info, d.span)

        clauses = [self.clause_head(d, clause, index_data) for clause in d.clauses]
        seen = {}
        for clause, (index_con, _) in zip(d.clauses, clauses):
            if index_con.name in seen:
                raise ill_formed("DuplicateHead", f"{d.name} has two clauses for index {index_con.name}",
                                 clause.span)
            seen[index_con.name] = clause
        for index_con in index_data.constructors:
            if index_con.name not in seen:
                raise ill_formed("MissingCase", f"{d.name} has no clause for index {index_con.name}", d.span)
        for clause in d.clauses:
            if len(clause.alternatives) != 1:
                raise ill_formed("MultipleConstructorsPerClause",
                                 f"a clause of {d.name} must have exactly one constructor", clause.span)
        for clause, (_, pattern_vars) in zip(d.clauses, clauses):
            self.check_recursion(d.name, clause, pattern_vars)

        info.simple_premises = self.type_positions(kinds)
        simple_assumptions = tuple(Assumption(SIMPLE, VRigid(i), i) for i in info.simple_premises)
        all_values = []
        all_terms = []
        for tag, (clause, (index_con, pattern_vars)) in enumerate(zip(d.clauses, clauses)):
            con = clause.alternatives[0]
            con_info, terms, values = self.clause_constructor(info, kinds, clause, index_dom, index_con,
                                                              pattern_vars, tag)
            for level, value, span in values:
                if not self.oracle.is_simple(level, value, simple_assumptions):
                    raise CheckError(f"a field of {con.name} is not a simple type", span,
                                     DiagnosticCode.SIMPLENESS_ERROR)
            all_terms += terms
            all_values += values
            info.constructors.append(con_info)
            info.index_clauses[index_con] = con_info
            self.module_env.define(con.name, con_info, con.span)
        self.derive_parameter(info, kinds, all_values, all_terms)
        logger.debug("simple %s: parameter premises %s", d.name, info.parameter_premises)
        return info

    def clause_head(self, d, clause, index_data):
        """
        Check the left-hand side `F a1 .. an (K x1 .. xm)` of a clause and
        return the index constructor K with the names of x1 .. xm.
        """
        head = clause.head_args[0]
        if head.name != d.name or len(clause.head_args) != len(d.params) + 2:
            raise CheckError(f"a clause must define {d.name} applied to {len(d.params)} parameters and an index",
                             clause.span, DiagnosticCode.TYPE_MISMATCH)
        for arg in clause.head_args[1:-1]:
            if not isinstance(arg, s.Var):
                raise CheckError("the parameters of a clause must be variables", clause.span,
                                 DiagnosticCode.TYPE_MISMATCH)
        pattern = clause.head_args[-1]
        fn, args = s.spine(pattern)
        index_con = self.module_env.lookup(fn.name) if isinstance(fn, s.Con) else None
        if not isinstance(index_con, ConstructorInfo) or index_con.data is not index_data:
            raise CheckError(f"the index of a clause must be a constructor of {index_data.name}", clause.span,
                             DiagnosticCode.TYPE_MISMATCH)
        if len(args) != index_con.nfields or not all(isinstance(a, s.Var) for a in args):
            raise CheckError(f"{index_con.name} must be applied to {index_con.nfields} variables", clause.span,
                             DiagnosticCode.TYPE_MISMATCH)
        return index_con, [a.name for a in args]

    def check_recursion(self, name, clause, pattern_vars):
        def visit(e):
            fn, args = s.spine(e)
            if isinstance(fn, s.Con) and fn.name == name:
                if not args or not (isinstance(args[-1], s.Var) and args[-1].name in pattern_vars):
                    raise ill_formed("NonDecreasingRecursion",
                                     f"{name} may only recur on a variable of the clause's index pattern",
                                     fn.span)
            for arg in args:
                visit(arg)
            if isinstance(fn, s.Tensor):
                visit(fn.left)
                visit(fn.right)
            elif isinstance(fn, (s.Pi, s.Exists)):
                if fn.dom is not None:
                    visit(fn.dom)
                visit(fn.cod)
            elif isinstance(fn, s.Bang):
                visit(fn.type)

        for f in clause.alternatives[0].fields:
            visit(f)

    def clause_constructor(self, info, kinds, clause, index_dom, index_con, pattern_vars, tag):
        con = clause.alternatives[0]
        nparams = len(kinds)
        names = [a.name for a in clause.head_args[1:-1]]
        ctx = Ctx().irrelevant_mode()
        for name, kind in zip(names, kinds):
            ctx, _ = ctx.bind(name, self.ev.eval(ctx.env, kind), clause.span, irrelevant=True)
        index_ty = index_con.type_value
        for a in index_dom.args:
            index_ty = self.ev.instantiate(self.ev.whnf(index_ty).closure, a)
        var_kinds = []
        for name in pattern_vars:
            index_ty = self.ev.whnf(index_ty)
            var_kinds.append(self.ev.quote(ctx.level, index_ty.dom))
            ctx, _ = ctx.bind(name, index_ty.dom, clause.span, irrelevant=True)
            index_ty = self.ev.instantiate(index_ty.closure, VRigid(ctx.level - 1))
        terms, values = self.elab_fields(ctx, con.fields)
        nvars = len(pattern_vars)
        depth = nparams + nvars + len(terms)
        index_args = [(self.ev.quote(depth, a), Icit.IRRELEVANT) for a in index_dom.args]
        index_args += [(c.Var(depth - nparams - k - 1), Icit.EXPLICIT) for k in range(nvars)]
        result = c.apps(c.TyCon(info), [(c.Var(depth - j - 1), Icit.EXPLICIT) for j in range(nparams)])
        result = c.App(result, c.apps(c.Con(index_con), index_args), Icit.EXPLICIT)
        con_ty = result
        for term in reversed(terms):
            con_ty = c.Pi(None, Icit.EXPLICIT, term, con_ty)
        for name, kind in reversed(list(zip(pattern_vars, var_kinds))):
            con_ty = c.Pi(name, Icit.IRRELEVANT, kind, con_ty)
        for name, kind in reversed(list(zip(names, kinds))):
            con_ty = c.Pi(name, Icit.IRRELEVANT, kind, con_ty)
        con_info = ConstructorInfo(con.name, info, tag, con_ty, self.ev.eval((), con_ty), nparams, nvars,
                                   len(terms), tuple(pattern_vars), con.span)
        return con_info, terms, values

