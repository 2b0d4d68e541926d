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
Semantic values produced by evaluation. Neutral values (rigid variables,
unsolved metavariables, unfoldable globals, stuck eliminations) carry a
spine of (argument, icit) pairs. Environments are tuples whose last
element is de Bruijn index 0.
"""

from dataclasses import dataclass
from typing import Optional

from pydpq.syntax import Icit


@dataclass(frozen=True, slots=True)
class Closure:
    env: tuple
    body: object


@dataclass(frozen=True, slots=True)
class VRigid:
    level: int
    spine: tuple = ()


@dataclass(frozen=True, slots=True)
class VFlex:
    mid: int
    spine: tuple = ()


class VGlobal:
    """
    A global applied to arguments. Unfolding happens on demand in whnf and
    the result is cached on the value.
    """
    __slots__ = ("defn", "spine", "unfolded")

    def __init__(self, defn, spine=()):
        self.defn = defn
        self.spine = spine
        self.unfolded = None

    def __repr__(self):
        return f"VGlobal({self.defn.name}, {self.spine!r})"


@dataclass(frozen=True, slots=True)
class VStuck:
    """
    A case or pair elimination whose scrutinee is neutral. `term` is the
    Case or LetPair node, evaluated in `env` once it can reduce.
    """
    scrutinee: object
    term: object
    env: tuple
    spine: tuple = ()


@dataclass(frozen=True, slots=True)
class VLam:
    name: Optional[str]
    icit: Icit
    closure: Closure


@dataclass(frozen=True, slots=True)
class VPi:
    name: Optional[str]
    icit: Icit
    dom: object
    closure: Closure


@dataclass(frozen=True, slots=True)
class VExists:
    name: Optional[str]
    dom: object
    closure: Closure


@dataclass(frozen=True, slots=True)
class VBang:
    type: object


@dataclass(frozen=True, slots=True)
class VTensor:
    left: object
    right: object


@dataclass(frozen=True, slots=True)
class VUnitT:
    pass


@dataclass(frozen=True, slots=True)
class VStar:
    pass


@dataclass(frozen=True, slots=True)
class VPair:
    left: object
    right: object


@dataclass(frozen=True, slots=True)
class VCirc:
    input: object
    output: object


@dataclass(frozen=True, slots=True)
class VType:
    pass


@dataclass(frozen=True, slots=True)
class VTyCon:
    info: object
    args: tuple = ()


@dataclass(frozen=True, slots=True)
class VCon:
    """
    A constructor applied to its arguments: data parameters, hidden
    (forall-bound) arguments, then fields.
    """
    info: object
    args: tuple = ()

    @property
    def fields(self):
        return self.args[self.info.nparams + self.info.nhidden:]


@dataclass(frozen=True, slots=True)
class VConstraint:
    cls: object
    arg: object


@dataclass(frozen=True, slots=True)
class VDict:
    instance: object
    methods: tuple


@dataclass(frozen=True, slots=True)
class VHole:
    """
    Evidence that has not been resolved yet.
    """
    hole: object


class VPrim:
    """
    A runtime primitive (gate, built-in or method selector) collecting
    arguments until it is saturated.
    """
    __slots__ = ("name", "arity", "fn", "args")

    def __init__(self, name, arity, fn, args=()):
        self.name = name
        self.arity = arity
        self.fn = fn
        self.args = args

    def __repr__(self):
        return f"VPrim({self.name}, {len(self.args)}/{self.arity})"


@dataclass(frozen=True, slots=True)
class Wire:
    """
    A circuit wire carrying a value of the object type `kind`.
    """
    id: int
    kind: str

    def __str__(self):
        return f"{self.kind[0].lower()}{self.id}"


VTYPE = VType()
VUNIT = VUnitT()
VSTAR = VStar()


def nat_value(v):
    """
    Convert a value built from Z and S to an int, or return None.
    """
    n = 0
    while isinstance(v, VCon) and v.info.name == "S" and len(v.args) == 1:
        n += 1
        v = v.args[0]
    if isinstance(v, VCon) and v.info.name == "Z" and not v.args:
        return n
    return None
