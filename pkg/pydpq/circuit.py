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
The circuit IR: gate instances over wires, completed circuits, the
builder they are recorded in, and a canonical text serialization.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Optional

from pydpq.diagnostics import IrreversibleGate, PqdError
from pydpq.shapes import map_wires, wires_of
from pydpq.values import Wire, nat_value

logger = logging.getLogger(__name__)

WIRE_KINDS = {"q": "Qubit", "b": "Bit"}


@dataclass(frozen=True)
class GateInstance:
    name: str
    params: tuple
    ins: tuple
    outs: tuple
    gate: Optional[object] = field(default=None, compare=False, repr=False)

    @property
    def label(self):
        if self.gate is not None and self.gate.label:
            return self.gate.label
        return self.name

    def renamed(self, fn):
        return GateInstance(self.name, self.params, tuple(fn(w) for w in self.ins),
                            tuple(fn(w) for w in self.outs), self.gate)


@dataclass(frozen=True)
class Circuit:
    """
    A completed circuit. `inputs` and `outputs` are the interface values
    (wires arranged as in a value of the interface type); `in_wires` and
    `out_wires` list their wires from left to right.
    """
    inputs: object
    gates: tuple
    outputs: object
    in_wires: tuple = ()
    out_wires: tuple = ()

    @classmethod
    def of(cls, inputs, gates, outputs):
        return cls(inputs, tuple(gates), outputs, tuple(wires_of(inputs)), tuple(wires_of(outputs)))

    def __len__(self):
        return len(self.gates)

    def summary(self):
        return f"Circ(ins={len(self.in_wires)}, gates={len(self.gates)}, outs={len(self.out_wires)})"

    def reversed(self):
        gates = []
        for g in reversed(self.gates):
            if g.gate is None or g.gate.adjoint is None:
                raise IrreversibleGate(g.name)
            adjoint = g.gate.adjoint
            gates.append(GateInstance(adjoint.name, g.params, g.outs, g.ins, adjoint))
        return Circuit(self.outputs, tuple(gates), self.inputs, self.out_wires, self.in_wires)

    def count(self, name):
        return sum(1 for g in self.gates if g.name == name)


class WireSupply:
    def __init__(self):
        self.ids = itertools.count()

    def __call__(self, kind):
        return Wire(next(self.ids), kind)


class CircuitBuilder:
    """
    Collects the gates applied while a circuit is being generated.
    """

    def __init__(self, toplevel=False):
        self.gates = []
        self.toplevel = toplevel

    def append(self, gate):
        self.gates.append(gate)

    def build(self, inputs, outputs):
        return Circuit.of(inputs, self.gates, outputs)


def splice(circuit, inputs, builder, new_wire):
    """
    Append a copy of circuit to builder, connecting its inputs to the wires
    of `inputs` and giving every other wire a fresh name. Returns the
    renamed output interface.
    """
    renaming = dict(zip(circuit.in_wires, wires_of(inputs)))

    def rename(w):
        if w not in renaming:
            renaming[w] = new_wire(w.kind)
        return renaming[w]

    for g in circuit.gates:
        builder.append(g.renamed(rename))
    return map_wires(circuit.outputs, rename)


# Serialization

def format_param(v):
    n = nat_value(v)
    return str(n) if n is not None else str(v)


def canonical_names(circuit):
    names = {}
    counters = {}

    def name(w):
        if w not in names:
            prefix = w.kind[0].lower()
            n = counters.get(prefix, 0)
            counters[prefix] = n + 1
            names[w] = f"{prefix}{n}"
        return names[w]

    for w in circuit.in_wires:
        name(w)
    for g in circuit.gates:
        for w in itertools.chain(g.ins, g.outs):
            name(w)
    for w in circuit.out_wires:
        name(w)
    return name


def serialize(circuit):
    """
    The canonical text form: a header, the interface wires, then one line
    per gate. Wires are numbered by first appearance so that equal circuits
    serialize identically.
    """
    name = canonical_names(circuit)
    lines = [f"circuit ins={len(circuit.in_wires)} gates={len(circuit.gates)} outs={len(circuit.out_wires)}",
             " ".join(["inputs:"] + [name(w) for w in circuit.in_wires]),
             " ".join(["outputs:"] + [name(w) for w in circuit.out_wires])]
    for g in circuit.gates:
        head = g.name
        if g.params:
            head += "(" + ",".join(format_param(p) for p in g.params) + ")"
        lines.append(" ".join([head] + [name(w) for w in g.ins] + ["->"] + [name(w) for w in g.outs]))
    return "\n".join(lines) + "\n"


class CircuitFormatError(PqdError):
    pass


def parse_circuit(text):
    """
    Read back the output of serialize. Interface structure is not kept:
    inputs and outputs become flat tuples of wires, parameters stay strings.
    """
    lines = [line for line in text.splitlines() if line.strip()]
    if len(lines) < 3 or not lines[0].startswith("circuit "):
        raise CircuitFormatError("not a serialized circuit")
    header = dict(item.split("=", 1) for item in lines[0].split()[1:])
    wires = {}

    def wire(token):
        if token not in wires:
            wires[token] = Wire(len(wires), WIRE_KINDS.get(token[0], token[0].upper()))
        return wires[token]

    def interface(line, keyword):
        parts = line.split()
        if not parts or parts[0] != keyword:
            raise CircuitFormatError(f"expected {keyword}")
        return tuple(wire(token) for token in parts[1:])

    ins = interface(lines[1], "inputs:")
    outs = interface(lines[2], "outputs:")
    gates = []
    for line in lines[3:]:
        head, *rest = line.split()
        if "->" not in rest:
            raise CircuitFormatError(f"bad gate line: {line}")
        arrow = rest.index("->")
        name, params = head, ()
        if "(" in head:
            name, _, args = head.partition("(")
            params = tuple(args.rstrip(")").split(","))
        gates.append(GateInstance(name, params, tuple(wire(t) for t in rest[:arrow]),
                                  tuple(wire(t) for t in rest[arrow + 1:])))
    circuit = Circuit(ins, tuple(gates), outs, ins, outs)
    if int(header.get("gates", len(gates))) != len(gates):
        raise CircuitFormatError("gate count does not match the header")
    return circuit
