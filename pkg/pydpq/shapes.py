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
Wire shapes of simple types: how many wires a value of the type carries
and how they are arranged in the value.
"""

from dataclasses import dataclass

from pydpq.diagnostics import NotConcrete, NotSimple
from pydpq.env import DataKind
from pydpq.syntax import Icit
from pydpq.values import VCon, VPair, VPi, VSTAR, VStar, VTensor, VTyCon, VUnitT, Wire


@dataclass(frozen=True)
class Leaf:
    kind: str


@dataclass(frozen=True)
class UnitShape:
    pass


@dataclass(frozen=True)
class PairShape:
    left: object
    right: object


@dataclass(frozen=True)
class ConShape:
    """
    A simple family at a concrete index: the constructor, the values of
    its parameter and hidden arguments, and the shapes of its fields.
    """
    info: object
    prefix: tuple
    fields: tuple


UNIT_SHAPE = UnitShape()


def shape_of(evaluator, v):
    v = evaluator.whnf(v)
    if isinstance(v, VUnitT):
        return UNIT_SHAPE
    if isinstance(v, VTensor):
        return PairShape(shape_of(evaluator, v.left), shape_of(evaluator, v.right))
    if isinstance(v, VTyCon):
        info = v.info
        if info.kind is DataKind.OBJECT:
            return Leaf(info.name)
        if info.kind is DataKind.SIMPLE and len(v.args) == info.arity:
            return family_shape(evaluator, v)
    if isinstance(v, VTyCon) or isinstance(v, (VPi, VCon, VPair, VStar)):
        raise NotSimple(f"{v!r} is not a simple type")
    raise NotConcrete(f"the shape of {v!r} is not known")


def family_shape(evaluator, v):
    info = v.info
    params = v.args[:info.nparams]
    index = evaluator.whnf(v.args[info.nparams])
    if not isinstance(index, VCon):
        raise NotConcrete(f"the index of {info.name} is not a constructor")
    con = info.index_clauses[index.info]
    hidden = index.args[index.info.nparams:]
    ty = con.type_value
    for arg in params + hidden:
        ty = evaluator.instantiate(evaluator.whnf(ty).closure, arg)
    fields = []
    ty = evaluator.whnf(ty)
    while isinstance(ty, VPi) and ty.icit is Icit.EXPLICIT:
        fields.append(shape_of(evaluator, ty.dom))
        ty = evaluator.whnf(evaluator.instantiate(ty.closure, VSTAR))
    return ConShape(con, tuple(params) + tuple(hidden), tuple(fields))


def leaves(shape):
    if isinstance(shape, Leaf):
        return [shape.kind]
    if isinstance(shape, PairShape):
        return leaves(shape.left) + leaves(shape.right)
    if isinstance(shape, ConShape):
        return [kind for f in shape.fields for kind in leaves(f)]
    return []


def fresh_value(shape, new_wire):
    """
    Build a value of the given shape, calling new_wire(kind) for each wire
    from left to right.
    """
    if isinstance(shape, Leaf):
        return new_wire(shape.kind)
    if isinstance(shape, PairShape):
        left = fresh_value(shape.left, new_wire)
        return VPair(left, fresh_value(shape.right, new_wire))
    if isinstance(shape, ConShape):
        return VCon(shape.info, shape.prefix + tuple(fresh_value(f, new_wire) for f in shape.fields))
    return VSTAR


def map_wires(v, fn):
    """
    Rebuild a wire-carrying value with every wire w replaced by fn(w).
    """
    if isinstance(v, Wire):
        return fn(v)
    if isinstance(v, VPair):
        return VPair(map_wires(v.left, fn), map_wires(v.right, fn))
    if isinstance(v, VCon):
        split = v.info.nparams + v.info.nhidden
        return VCon(v.info, v.args[:split] + tuple(map_wires(a, fn) for a in v.args[split:]))
    return v


def wires_of(v):
    out = []

    def collect(w):
        out.append(w)
        return w

    map_wires(v, collect)
    return out


def matches(shape, v):
    if isinstance(shape, Leaf):
        return isinstance(v, Wire) and v.kind == shape.kind
    if isinstance(shape, PairShape):
        return isinstance(v, VPair) and matches(shape.left, v.left) and \
            matches(shape.right, v.right)
    if isinstance(shape, ConShape):
        return isinstance(v, VCon) and v.info is shape.info and len(v.fields) == len(shape.fields) and \
            all(matches(s, f) for s, f in zip(shape.fields, v.fields))
    return isinstance(v, VStar)
