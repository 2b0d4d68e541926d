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
Elaborated core terms. Variables are de Bruijn indices, so alpha-equivalent
terms compare equal. Globals, constructors and type constructors refer to
their definition objects rather than to names.

Binder nodes carry a BinderInfo used by the linearity pass; it does not
take part in equality, nor do spans.
"""

import dataclasses
from dataclasses import dataclass, field
from typing import Optional

from pydpq.diagnostics import NO_SPAN, Span
from pydpq.syntax import Icit


@dataclass(eq=False)
class BinderInfo:
    """
    What the linearity pass needs to know about a binder: its name and
    position, its type (a value) and the class assumptions in scope.
    """
    name: Optional[str]
    span: Span = NO_SPAN
    type: object = None
    irrelevant: bool = False
    assumptions: tuple = ()


def _info():
    return field(default=None, compare=False, repr=False)


def _span():
    return field(default=NO_SPAN, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class Var:
    ix: int
    span: Span = _span()


@dataclass(frozen=True, slots=True)
class Global:
    defn: object


@dataclass(frozen=True, slots=True)
class Con:
    info: object


@dataclass(frozen=True, slots=True)
class TyCon:
    info: object


@dataclass(frozen=True, slots=True)
class Lam:
    name: Optional[str]
    icit: Icit
    body: object
    binder: BinderInfo = _info()


@dataclass(frozen=True, slots=True)
class App:
    fn: object
    arg: object
    icit: Icit = Icit.EXPLICIT


@dataclass(frozen=True, slots=True)
class Pi:
    name: Optional[str]
    icit: Icit
    dom: object
    cod: object


@dataclass(frozen=True, slots=True)
class Exists:
    name: Optional[str]
    dom: object
    cod: object


@dataclass(frozen=True, slots=True)
class Bang:
    type: object


@dataclass(frozen=True, slots=True)
class Lift:
    """
    Introduction of `!A`; the wrapped term may not use enclosing linear
    variables.
    """
    term: object


@dataclass(frozen=True, slots=True)
class Force:
    term: object


@dataclass(frozen=True, slots=True)
class Tensor:
    left: object
    right: object


@dataclass(frozen=True, slots=True)
class UnitT:
    pass


@dataclass(frozen=True, slots=True)
class Star:
    pass


@dataclass(frozen=True, slots=True)
class Pair:
    left: object
    right: object


@dataclass(frozen=True, slots=True)
class Circ:
    input: object
    output: object


@dataclass(frozen=True, slots=True)
class TypeU:
    pass


@dataclass(frozen=True, slots=True)
class Let:
    name: Optional[str]
    value: object
    body: object
    binder: BinderInfo = _info()


@dataclass(frozen=True, slots=True)
class LetPair:
    """
    `let (x, y) = scrutinee in body`; x is index 1 and y index 0 in body.
    """
    names: tuple
    scrutinee: object
    body: object
    binders: tuple = _info()


@dataclass(frozen=True, slots=True)
class CaseBranch:
    """
    A branch binds the constructor's hidden arguments followed by its
    fields; the data type parameters are not bound.
    """
    con: object
    names: tuple
    body: object
    binders: tuple = _info()


@dataclass(frozen=True, slots=True)
class Case:
    scrutinee: object
    branches: tuple
    span: Span = _span()


@dataclass(frozen=True, slots=True)
class Meta:
    mid: int


@dataclass(frozen=True, slots=True)
class InsertedMeta:
    """
    A metavariable applied to the bound variables of its context; mask[l]
    says whether level l is one of them.
    """
    mid: int
    mask: tuple


@dataclass(frozen=True, slots=True)
class Evidence:
    """
    Placeholder for a class dictionary, filled in by instance resolution.
    """
    hole: object


@dataclass(frozen=True, slots=True)
class Witness:
    """
    Evidence for the built-in classes Simple and Parameter; carries no data.
    """
    class_name: str


@dataclass(frozen=True, slots=True)
class Dict:
    instance: object
    methods: tuple


@dataclass(frozen=True, slots=True)
class ClassConstraint:
    cls: object
    arg: object


def apps(fn, args):
    """
    Apply fn to a sequence of (argument, icit) pairs.
    """
    for arg, icit in args:
        fn = App(fn, arg, icit)
    return fn


def app_spine(term):
    args = []
    while isinstance(term, App):
        args.append((term.arg, term.icit))
        term = term.fn
    args.reverse()
    return term, args


_SKIPPED_FIELDS = frozenset(["binder", "binders", "span"])


def subterms(term):
    """
    The immediate core subterms of a node, branches included.
    """
    for f in dataclasses.fields(term):
        if f.name in _SKIPPED_FIELDS:
            continue
        child = getattr(term, f.name)
        if isinstance(child, tuple):
            for item in child:
                if type(item).__module__ == __name__ and not isinstance(item, BinderInfo):
                    yield item
        elif type(child).__module__ == __name__:
            yield child


_BODY_BINDERS = {Lam: ("body", 1), Pi: ("cod", 1), Exists: ("cod", 1), Let: ("body", 1), LetPair: ("body", 2)}


def free_indices(term, depth=0):
    """
    The de Bruijn indices free in a term, relative to the term's context.
    """
    if isinstance(term, Var):
        return {term.ix - depth} if term.ix >= depth else set()
    if isinstance(term, CaseBranch):
        return free_indices(term.body, depth + len(term.names))
    binder = _BODY_BINDERS.get(type(term))
    result = set()
    for f in dataclasses.fields(term):
        if f.name in _SKIPPED_FIELDS:
            continue
        extra = binder[1] if binder is not None and binder[0] == f.name else 0
        child = getattr(term, f.name)
        for item in child if isinstance(child, tuple) else (child,):
            if type(item).__module__ == __name__ and not isinstance(item, BinderInfo):
                result |= free_indices(item, depth + extra)
    return result
