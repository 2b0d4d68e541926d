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
Print surface trees back to concrete syntax. Blocks are printed with
explicit braces so that every declaration fits on one line and parses back
to the same tree.

Core terms and values are printed by converting them back to surface
trees first; erased arguments and evidence are left out.
"""

from pydpq import core as c
from pydpq import syntax as s
from pydpq.syntax import Icit

# Precedence levels, loosest first.
EXPR = 0
TENSOR = 1
OR = 2
AND = 3
APP = 4
ATOM = 5


def _paren(text, needed):
    return f"({text})" if needed else text


def pretty_pattern(p, atomic=False):
    if isinstance(p, s.PVar):
        return p.name
    if isinstance(p, s.PWild):
        return "_"
    if isinstance(p, s.PUnit):
        return "()"
    if isinstance(p, s.PTuple):
        return "(" + ", ".join(pretty_pattern(item) for item in p.items) + ")"
    if isinstance(p, s.PCon):
        if not p.args:
            return p.con
        text = " ".join([p.con] + [pretty_pattern(a, atomic=True) for a in p.args])
        return _paren(text, atomic)
    raise TypeError(f"not a pattern: {p!r}")


def pretty_binding(b):
    arrow = "<-" if b.arrow else "="
    return f"{pretty_pattern(b.pattern)} {arrow} {pretty_expr(b.expr)}"


def pretty_stmt(stmt):
    if isinstance(stmt, s.BindStmt):
        return f"{pretty_pattern(stmt.pattern)} <- {pretty_expr(stmt.expr)}"
    if isinstance(stmt, s.LetStmt):
        return "let { " + "; ".join(pretty_binding(b) for b in stmt.bindings) + " }"
    return pretty_expr(stmt.expr)


def _binder_names(names):
    return " ".join(names)


def pretty_expr(e, prec=EXPR):
    if isinstance(e, (s.Var, s.Con)):
        return e.name
    if isinstance(e, s.NatLit):
        return str(e.value)
    if isinstance(e, s.TypeKind):
        return "Type"
    if isinstance(e, s.UnitType):
        return "Unit"
    if isinstance(e, s.UnitVal):
        return "()"
    if isinstance(e, s.Tuple):
        return "(" + ", ".join(pretty_expr(item) for item in e.items) + ")"
    if isinstance(e, s.Idiom):
        return f"[| {pretty_expr(e.expr)} |]"
    if isinstance(e, s.CircType):
        return f"Circ({pretty_expr(e.input)}, {pretty_expr(e.output)})"
    if isinstance(e, s.Bang):
        return "!" + pretty_expr(e.type, ATOM)
    if isinstance(e, s.App):
        text = f"{pretty_expr(e.fn, APP)} {pretty_expr(e.arg, ATOM)}"
        return _paren(text, prec > APP)
    if isinstance(e, s.BinOp):
        level = AND if e.op == "&&" else OR
        text = f"{pretty_expr(e.left, level)} {e.op} {pretty_expr(e.right, level + 1)}"
        return _paren(text, prec > level)
    if isinstance(e, s.Tensor):
        left = pretty_expr(e.left, TENSOR)
        if isinstance(e.left, s.Exists):
            left = f"({left})"
        text = f"{left} * {pretty_expr(e.right, OR)}"
        return _paren(text, prec > TENSOR)
    if isinstance(e, s.Exists):
        text = f"({_binder_names(e.names)} : {pretty_expr(e.dom)}) * {pretty_expr(e.cod, TENSOR)}"
        return _paren(text, prec > TENSOR)
    if isinstance(e, s.Pi):
        return _paren(_pretty_pi(e), prec > EXPR)
    if isinstance(e, s.Constrained):
        if len(e.constraints) == 1:
            constraints = pretty_expr(e.constraints[0], TENSOR)
        else:
            constraints = "(" + ", ".join(pretty_expr(c) for c in e.constraints) + ")"
        return _paren(f"{constraints} => {pretty_expr(e.body)}", prec > EXPR)
    if isinstance(e, s.Lam):
        params = " ".join(pretty_pattern(p, atomic=True) for p in e.params)
        return _paren(f"\\{params} -> {pretty_expr(e.body)}", prec > EXPR)
    if isinstance(e, s.Let):
        bindings = "; ".join(pretty_binding(b) for b in e.bindings)
        return _paren(f"let {{ {bindings} }} in {pretty_expr(e.body)}", prec > EXPR)
    if isinstance(e, s.Case):
        branches = "; ".join(
            " ".join([b.con] + list(b.names)) + f" -> {pretty_expr(b.body)}" for b in e.branches)
        return _paren(f"case {pretty_expr(e.scrutinee)} of {{ {branches} }}", prec > EXPR)
    if isinstance(e, s.Do):
        stmts = "; ".join(pretty_stmt(stmt) for stmt in e.stmts)
        return _paren(f"do {{ {stmts} }}", prec > EXPR)
    raise TypeError(f"not an expression: {e!r}")


def _pretty_pi(e):
    cod = pretty_expr(e.cod)
    if e.icit is s.Icit.IRRELEVANT:
        if e.dom is None:
            return f"forall {_binder_names(e.names)} -> {cod}"
        return f"forall ({_binder_names(e.names)} : {pretty_expr(e.dom)}) -> {cod}"
    if e.icit is s.Icit.IMPLICIT:
        return f"{{{_binder_names(e.names)} : {pretty_expr(e.dom)}}} -> {cod}"
    if e.names == [None]:
        return f"{pretty_expr(e.dom, TENSOR)} -> {cod}"
    return f"({_binder_names(e.names)} : {pretty_expr(e.dom)}) -> {cod}"


def _pretty_params(params):
    out = []
    for p in params:
        if p.kind is None:
            out.append(p.name)
        else:
            out.append(f"({p.name} : {pretty_expr(p.kind)})")
    return out


def _pretty_constructor(c):
    return " ".join([c.name] + [pretty_expr(f, ATOM) for f in c.fields])


def pretty_decl(d):
    if isinstance(d, s.DataDecl):
        head = " ".join(["data", d.name] + _pretty_params(d.params))
        return f"{head} = " + " | ".join(_pretty_constructor(c) for c in d.constructors)
    if isinstance(d, s.SimpleDecl):
        head = " ".join(["simple", d.name] + _pretty_params(d.params))
        clauses = []
        for clause in d.clauses:
            lhs = " ".join(pretty_expr(a, ATOM) for a in clause.head_args)
            rhs = " | ".join(_pretty_constructor(c) for c in clause.alternatives)
            clauses.append(f"{lhs} = {rhs}")
        return f"{head} : {pretty_expr(d.index_kind)} where {{ " + "; ".join(clauses) + " }"
    if isinstance(d, s.ObjectDecl):
        return f"object {d.name}"
    if isinstance(d, s.GateDecl):
        head = " ".join(["gate", d.name] + [pretty_expr(k, ATOM) for k in d.param_kinds])
        return f"{head} : {pretty_expr(d.wire_type)}"
    if isinstance(d, s.ClassDecl):
        head = " ".join(["class", d.name] + _pretty_params(d.params))
        methods = "; ".join(f"{m.name} : {pretty_expr(m.type)}" for m in d.methods)
        return f"{head} where {{ {methods} }}"
    if isinstance(d, s.InstanceDecl):
        prefix = ""
        if d.constraints:
            prefix = "(" + ", ".join(pretty_expr(c) for c in d.constraints) + ") => "
        methods = "; ".join(_pretty_equation(m) for m in d.methods)
        return f"instance {prefix}{d.class_name} {pretty_expr(d.head, ATOM)} where {{ {methods} }}"
    if isinstance(d, s.TermDef):
        signature = f"{d.name} : {pretty_expr(d.declared_type)}"
        return signature + "\n" + _pretty_equation(s.Equation(d.name, d.params, d.body))
    if isinstance(d, s.AdjointDecl):
        return "adjoint " + " ".join(d.names)
    if isinstance(d, s.RenderDecl):
        parts = ["render", d.gate] + list(d.glyphs)
        if d.label is not None:
            parts.append(f'"{d.label}"')
        return " ".join(parts)
    raise TypeError(f"not a declaration: {d!r}")


def _pretty_equation(eq):
    return " ".join([eq.name] + list(eq.params)) + f" = {pretty_expr(eq.body)}"


def pretty_module(decls):
    return "".join(pretty_decl(d) + "\n" for d in decls)


# Core terms

class _Namer:
    def __init__(self, names):
        self.names = list(names)

    def push(self, name):
        base = name or "x"
        candidate = base
        n = 0
        while candidate in self.names:
            n += 1
            candidate = f"{base}{n}"
        self.names.append(candidate)
        return candidate

    def pop(self, count=1):
        del self.names[len(self.names) - count:]

    def lookup(self, ix):
        if ix < len(self.names):
            return self.names[len(self.names) - 1 - ix]
        return f"#{ix}"


def _flatten_pair(t):
    items = []
    while isinstance(t, c.Pair):
        items.append(t.right)
        t = t.left
    items.append(t)
    items.reverse()
    return items


def core_to_surface(t, names=()):
    """
    Convert a core term in a context named by `names` (outermost first)
    into a surface tree.
    """
    return _to_surface(t, _Namer(names))


def _to_surface(t, namer):
    if isinstance(t, c.Var):
        return s.Var(namer.lookup(t.ix))
    if isinstance(t, c.Global):
        return s.Var(t.defn.name)
    if isinstance(t, (c.Con, c.TyCon)):
        return s.Con(t.info.name)
    if isinstance(t, c.App):
        fn = _to_surface(t.fn, namer)
        if t.icit is not Icit.EXPLICIT:
            return fn
        return s.App(fn, _to_surface(t.arg, namer))
    if isinstance(t, c.Lam):
        name = namer.push(t.name)
        body = _to_surface(t.body, namer)
        namer.pop()
        if t.icit is not Icit.EXPLICIT:
            return body
        return s.Lam([s.PVar(name)], body)
    if isinstance(t, c.Pi):
        return _pi_to_surface(t, namer)
    if isinstance(t, c.Exists):
        dom = _to_surface(t.dom, namer)
        name = namer.push(t.name)
        cod = _to_surface(t.cod, namer)
        namer.pop()
        return s.Exists([name], dom, cod)
    if isinstance(t, c.Bang):
        return s.Bang(_to_surface(t.type, namer))
    if isinstance(t, (c.Lift, c.Force)):
        return _to_surface(t.term, namer)
    if isinstance(t, c.Tensor):
        return s.Tensor(_to_surface(t.left, namer), _to_surface(t.right, namer))
    if isinstance(t, c.UnitT):
        return s.UnitType()
    if isinstance(t, c.Star):
        return s.UnitVal()
    if isinstance(t, c.Pair):
        return s.Tuple([_to_surface(item, namer) for item in _flatten_pair(t)])
    if isinstance(t, c.Circ):
        return s.CircType(_to_surface(t.input, namer), _to_surface(t.output, namer))
    if isinstance(t, c.TypeU):
        return s.TypeKind()
    if isinstance(t, c.Let):
        value = _to_surface(t.value, namer)
        name = namer.push(t.name)
        body = _to_surface(t.body, namer)
        namer.pop()
        return s.Let([s.Binding(s.PVar(name), value)], body)
    if isinstance(t, c.LetPair):
        scrutinee = _to_surface(t.scrutinee, namer)
        left, right = namer.push(t.names[0]), namer.push(t.names[1])
        body = _to_surface(t.body, namer)
        namer.pop(2)
        return s.Let([s.Binding(s.PTuple([s.PVar(left), s.PVar(right)]), scrutinee)], body)
    if isinstance(t, c.Case):
        branches = []
        for branch in t.branches:
            bound = [namer.push(name) for name in branch.names]
            body = _to_surface(branch.body, namer)
            namer.pop(len(bound))
            branches.append(s.Branch(branch.con.name, bound[branch.con.nhidden:], body))
        return s.Case(_to_surface(t.scrutinee, namer), branches)
    if isinstance(t, (c.Meta, c.InsertedMeta)):
        return s.Var(f"?{t.mid}")
    if isinstance(t, c.ClassConstraint):
        return s.App(s.Con(t.cls.name), _to_surface(t.arg, namer))
    if isinstance(t, (c.Evidence, c.Witness, c.Dict)):
        return s.Var("<evidence>")
    raise TypeError(f"not a core term: {t!r}")


def _pi_to_surface(t, namer):
    dom = _to_surface(t.dom, namer)
    if t.icit is Icit.INSTANCE:
        namer.push(None)
        cod = _to_surface(t.cod, namer)
        namer.pop()
        if isinstance(cod, s.Constrained):
            return s.Constrained([dom] + cod.constraints, cod.body)
        return s.Constrained([dom], cod)
    named = t.icit is not Icit.EXPLICIT or 0 in c.free_indices(t.cod)
    name = namer.push(t.name)
    cod = _to_surface(t.cod, namer)
    namer.pop()
    return s.Pi([name if named else None], t.icit, dom, cod)


def pretty_core(t, names=()):
    return pretty_expr(core_to_surface(t, names))


def pretty_value(evaluator, level, v, names=None):
    """
    Print a value living in a context of `level` variables.
    """
    if names is None:
        names = [f"x{i}" for i in range(level)]
    return pretty_core(evaluator.quote(level, v), names)
