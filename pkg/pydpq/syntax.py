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
Surface syntax tree. Terms and types share one category; spans never take
part in equality so that trees can be compared structurally.
"""

import enum
from dataclasses import dataclass, field
from typing import Optional

from pydpq.diagnostics import NO_SPAN, Span


class Icit(enum.Enum):
    """
    How a binder is supplied: explicitly, inferred and erased (forall),
    inferred but relevant ({...}), or by instance resolution (=>).
    """
    EXPLICIT = "explicit"
    IRRELEVANT = "irrelevant"
    IMPLICIT = "implicit"
    INSTANCE = "instance"


def _span():
    return field(default=NO_SPAN, compare=False, repr=False)


# Expressions and types

@dataclass
class Var:
    name: str
    span: Span = _span()


@dataclass
class Con:
    name: str
    span: Span = _span()


@dataclass
class App:
    fn: object
    arg: object
    span: Span = _span()


@dataclass
class Lam:
    params: list
    body: object
    span: Span = _span()


@dataclass
class Binding:
    pattern: object
    expr: object
    arrow: bool = False
    span: Span = _span()


@dataclass
class Let:
    bindings: list
    body: object
    span: Span = _span()


@dataclass
class Branch:
    con: str
    names: list
    body: object
    span: Span = _span()


@dataclass
class Case:
    scrutinee: object
    branches: list
    span: Span = _span()


@dataclass
class BindStmt:
    pattern: object
    expr: object
    span: Span = _span()


@dataclass
class LetStmt:
    bindings: list
    span: Span = _span()


@dataclass
class ExprStmt:
    expr: object
    span: Span = _span()


@dataclass
class Do:
    stmts: list
    span: Span = _span()


@dataclass
class Idiom:
    expr: object
    span: Span = _span()


@dataclass
class Tuple:
    items: list
    span: Span = _span()


@dataclass
class UnitVal:
    span: Span = _span()


@dataclass
class NatLit:
    value: int
    span: Span = _span()


@dataclass
class BinOp:
    op: str
    left: object
    right: object
    span: Span = _span()


@dataclass
class Pi:
    """
    A binder group `(x y : A) -> B`. An anonymous arrow `A -> B` has the
    single name None. A binder without a type (`forall a ->`) has type None.
    """
    names: list
    icit: Icit
    dom: Optional[object]
    cod: object
    span: Span = _span()


@dataclass
class Exists:
    names: list
    dom: object
    cod: object
    span: Span = _span()


@dataclass
class Constrained:
    constraints: list
    body: object
    span: Span = _span()


@dataclass
class Bang:
    type: object
    span: Span = _span()


@dataclass
class Tensor:
    left: object
    right: object
    span: Span = _span()


@dataclass
class CircType:
    input: object
    output: object
    span: Span = _span()


@dataclass
class TypeKind:
    span: Span = _span()


@dataclass
class UnitType:
    span: Span = _span()


# Patterns

@dataclass
class PVar:
    name: str
    span: Span = _span()


@dataclass
class PWild:
    span: Span = _span()


@dataclass
class PUnit:
    span: Span = _span()


@dataclass
class PTuple:
    items: list
    span: Span = _span()


@dataclass
class PCon:
    con: str
    args: list
    span: Span = _span()


# Declarations

@dataclass
class Param:
    name: str
    kind: Optional[object] = None
    span: Span = _span()


@dataclass
class Constructor:
    name: str
    fields: list
    span: Span = _span()


@dataclass
class DataDecl:
    name: str
    params: list
    constructors: list
    span: Span = _span()


@dataclass
class SimpleClause:
    head_args: list
    alternatives: list
    span: Span = _span()


@dataclass
class SimpleDecl:
    name: str
    params: list
    index_kind: object
    clauses: list
    span: Span = _span()


@dataclass
class ObjectDecl:
    name: str
    span: Span = _span()


@dataclass
class GateDecl:
    name: str
    param_kinds: list
    wire_type: object
    span: Span = _span()


@dataclass
class MethodSig:
    name: str
    type: object
    span: Span = _span()


@dataclass
class ClassDecl:
    name: str
    params: list
    methods: list
    span: Span = _span()


@dataclass
class Equation:
    name: str
    params: list
    body: object
    span: Span = _span()


@dataclass
class InstanceDecl:
    class_name: str
    head: object
    constraints: list
    methods: list
    span: Span = _span()


@dataclass
class TermDef:
    name: str
    declared_type: object
    params: list
    body: object
    span: Span = _span()
    body_span: Span = _span()


@dataclass
class AdjointDecl:
    names: list
    span: Span = _span()


@dataclass
class RenderDecl:
    gate: str
    glyphs: list
    label: Optional[str] = None
    span: Span = _span()


def spine(expr):
    """
    Split an application into its head and argument list.
    """
    args = []
    while isinstance(expr, App):
        args.append(expr.arg)
        expr = expr.fn
    args.reverse()
    return expr, args


def apply(head, *args, span=NO_SPAN):
    for arg in args:
        head = App(head, arg, span)
    return head
