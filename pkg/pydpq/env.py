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
Committed definitions and the module environment they live in.

Definition records compare by identity: two definitions with the same name
(a prelude name shadowed by a user file) are different globals.
"""

import enum
import logging
import dataclasses
from dataclasses import dataclass, field
from typing import Optional

from pydpq.diagnostics import NO_SPAN, CheckError, DiagnosticCode, Span

logger = logging.getLogger(__name__)


class GlobalKind(enum.Enum):
    DEFINITION = "definition"
    GATE = "gate"
    BUILTIN = "builtin"
    METHOD = "method"
    INSTANCE = "instance"


class DataKind(enum.Enum):
    DATA = "data"
    SIMPLE = "simple"
    OBJECT = "object"


@dataclass(eq=False)
class GateInfo:
    name: str
    nparams: int
    inputs: tuple
    output: object
    adjoint: Optional["GateInfo"] = None
    glyphs: tuple = ()
    label: Optional[str] = None

    @property
    def arity(self):
        return self.nparams + len(self.inputs)

    @property
    def display_name(self):
        return self.label or self.name


@dataclass(eq=False)
class GlobalDef:
    name: str
    kind: GlobalKind
    type: object
    type_value: object
    term: object = None
    value: object = None
    span: Span = NO_SPAN
    gate: Optional[GateInfo] = None
    method: Optional[tuple] = None
    builtin: Optional[str] = None

    def __repr__(self):
        return f"GlobalDef({self.name}, {self.kind.value})"


@dataclass(eq=False)
class ConstructorInfo:
    name: str
    data: object
    tag: int
    type: object = None
    type_value: object = None
    nparams: int = 0
    nhidden: int = 0
    nfields: int = 0
    hidden_names: tuple = ()
    span: Span = NO_SPAN

    @property
    def arity(self):
        return self.nparams + self.nhidden + self.nfields

    def __repr__(self):
        return f"ConstructorInfo({self.name})"


@dataclass(eq=False)
class DataInfo:
    """
    A type constructor: an object, an algebraic data type, or a simple type
    family. For a simple family `index_clauses` maps each constructor of
    the index type to the single constructor of the family at that index.

    `parameter_premises` and `simple_premises` list the positions of the
    parameters that must themselves be Parameter (resp. Simple) for an
    application of the type to be one; None means never.
    """
    name: str
    kind: DataKind
    nparams: int = 0
    param_names: tuple = ()
    param_kinds: tuple = ()
    nindices: int = 0
    type: object = None
    type_value: object = None
    constructors: list = field(default_factory=list)
    index_clauses: dict = field(default_factory=dict)
    parameter_premises: Optional[tuple] = None
    simple_premises: Optional[tuple] = None
    span: Span = NO_SPAN

    @property
    def arity(self):
        return self.nparams + self.nindices

    def __repr__(self):
        return f"DataInfo({self.name})"


@dataclass(eq=False)
class ClassInfo:
    name: str
    param_name: str = "a"
    param_kind: object = None
    methods: list = field(default_factory=list)
    builtin: bool = False
    span: Span = NO_SPAN

    def method_index(self, name):
        for i, (method_name, _) in enumerate(self.methods):
            if method_name == name:
                return i
        raise KeyError(name)

    def __repr__(self):
        return f"ClassInfo({self.name})"


@dataclass(eq=False)
class InstanceInfo:
    """
    `instance (premises) => cls (head v1 .. vn)`; premises are (class, core
    term over the head variables) pairs.
    """
    cls: ClassInfo
    head: DataInfo
    nvars: int
    premises: tuple
    defn: Optional[GlobalDef] = None
    span: Span = NO_SPAN


class InstanceTable:
    """
    User instances keyed by class name and head type constructor.
    """

    def __init__(self, entries=None):
        self.entries = dict(entries or {})

    def add(self, instance):
        key = (instance.cls.name, instance.head.name)
        existing = self.entries.get(key)
        if existing is not None and existing.head is instance.head and existing.cls is instance.cls:
            raise CheckError(f"overlapping instance {instance.cls.name} {instance.head.name}",
                             instance.span, DiagnosticCode.CLASS_RESOLUTION_ERROR)
        self.entries[key] = instance

    def lookup(self, cls, head):
        instance = self.entries.get((cls.name, head.name))
        if instance is not None and instance.cls is cls and instance.head is head:
            return instance
        return None

    def copy(self):
        return InstanceTable(self.entries)

    def __len__(self):
        return len(self.entries)


SIMPLE = ClassInfo("Simple", builtin=True)
PARAMETER = ClassInfo("Parameter", builtin=True)


class ModuleEnv:
    """
    Name resolution for one session: global names map to GlobalDef,
    DataInfo, ConstructorInfo or ClassInfo records.
    """

    def __init__(self):
        self.names = {"Simple": SIMPLE, "Parameter": PARAMETER}
        self.instances = InstanceTable()
        self.file_names = set()
        self.file = "<input>"
        # Gate records as this environment sees them, keyed by the record
        # the gate was declared with.
        self.gates = {}
        self.owns_gates = True

    def begin_file(self, file):
        self.file = file
        self.file_names = set()

    def lookup(self, name):
        return self.names.get(name)

    def define(self, name, entry, span=NO_SPAN):
        if name in self.file_names:
            raise CheckError(f"{name} is already defined in this file", span, DiagnosticCode.SCOPE_ERROR)
        if name in self.names:
            logger.debug("%s shadows an earlier definition", name)
        self.file_names.add(name)
        self.names[name] = entry
        return entry

    def fork(self):
        """
        A copy that can be extended without affecting this environment.
        """
        other = ModuleEnv.__new__(ModuleEnv)
        other.names = dict(self.names)
        other.instances = self.instances.copy()
        other.file_names = set(self.file_names)
        other.file = self.file
        other.gates = dict(self.gates)
        other.owns_gates = False
        return other

    def globals(self):
        return [entry for entry in self.names.values() if isinstance(entry, GlobalDef)]

    def gate(self, declared):
        return self.gates.get(declared, declared)

    def writable_gate(self, declared):
        """
        The record of `declared` that `adjoint` and `render` may change.
        A forked environment copies every gate record it can see the first
        time, so the change stays out of the environment it was forked from.
        """
        if not self.owns_gates:
            declared_gates = {defn.gate for defn in self.globals() if defn.gate is not None}
            declared_gates.update(self.gates)
            copies = {}
            for g in declared_gates:
                current = self.gate(g)
                if id(current) not in copies:
                    copies[id(current)] = dataclasses.replace(current)
                self.gates[g] = copies[id(current)]
            for copy in copies.values():
                if copy.adjoint is not None:
                    copy.adjoint = copies.get(id(copy.adjoint), copy.adjoint)
            self.owns_gates = True
        return self.gate(declared)

    def snapshot(self):
        return dict(self.names), self.instances.copy(), set(self.file_names), dict(self.gates), self.owns_gates

    def restore(self, snapshot):
        """
        Undo every definition made since `snapshot` was taken.
        """
        names, instances, file_names, gates, owns_gates = snapshot
        self.names = dict(names)
        self.instances.entries = dict(instances.entries)
        self.file_names = set(file_names)
        self.gates = dict(gates)
        self.owns_gates = owns_gates
