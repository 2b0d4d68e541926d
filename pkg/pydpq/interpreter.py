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
Call-by-value evaluation of elaborated programs, generating circuits.

Gates, built-ins and class method selectors evaluate to primitives that
fire once all their arguments (erased ones included) are supplied.
Applying a gate appends an instance to the innermost open builder; box
and existsBox open a new builder for the duration of their argument.
"""

import logging
import sys
import threading

from pydpq.circuit import Circuit, CircuitBuilder, GateInstance, WireSupply, splice
from pydpq.diagnostics import EvalError, NotACircuit, ShapeMismatch
from pydpq.env import GlobalKind
from pydpq.evaluation import Evaluator
from pydpq.shapes import fresh_value, matches, shape_of, wires_of
from pydpq.syntax import Icit
from pydpq.values import VCon, VDict, VLam, VPair, VPrim, VStar, Wire, nat_value

logger = logging.getLogger(__name__)

STACK_SIZE = 512 * 1024 * 1024
RECURSION_LIMIT = 1000000


class Cancelled(EvalError):
    def __init__(self):
        super().__init__("evaluation interrupted")


class RuntimeEvaluator(Evaluator):
    def __init__(self, metas=None, cancel=None, gates=None):
        super().__init__(metas)
        self.gates = gates or {}
        self.new_wire = WireSupply()
        self.builders = [CircuitBuilder(toplevel=True)]
        self.cancel = cancel or threading.Event()
        self.cache = {}
        self.warned = False
        self.builtins = {
            "box": (5, self.box),
            "unbox": (5, self.unbox),
            "reverse": (5, self.reverse),
            "existsBox": (6, self.exists_box),
        }

    # Globals

    def eval_global(self, env, t):
        defn = t.defn
        if defn in self.cache:
            return self.cache[defn]
        if defn.kind is GlobalKind.GATE:
            gate = self.gates.get(defn.gate, defn.gate)
            value = VPrim(defn.name, gate.arity, lambda *args: self.apply_gate(gate, args))
        elif defn.kind is GlobalKind.BUILTIN:
            arity, fn = self.builtins[defn.builtin]
            value = VPrim(defn.name, arity, fn)
        elif defn.kind is GlobalKind.METHOD:
            index = defn.method[1]
            value = VPrim(defn.name, 2, lambda _type, evidence: evidence.methods[index])
        else:
            if defn.term is None:
                raise EvalError(f"{defn.name} has no definition")
            value = self.eval((), defn.term)
            if not isinstance(value, VLam):
                return value
        self.cache[defn] = value
        return value

    def apply(self, f, arg, icit=Icit.EXPLICIT):
        if isinstance(f, VPrim):
            args = f.args + (arg,)
            if len(args) == f.arity:
                return f.fn(*args)
            return VPrim(f.name, f.arity, f.fn, args)
        return super().apply(f, arg, icit)

    def whnf(self, v):
        return self.force(v)

    # Circuit generation

    @property
    def builder(self):
        return self.builders[-1]

    def check_cancel(self):
        if self.cancel.is_set():
            raise Cancelled()

    def target(self):
        builder = self.builder
        if builder.toplevel and not self.warned:
            logger.warning("gates applied outside of box are discarded")
            self.warned = True
        return builder

    def apply_gate(self, gate, args):
        self.check_cancel()
        params = args[:gate.nparams]
        ins = [w for v in args[gate.nparams:] for w in wires_of(v)]
        output = fresh_value(shape_of(self, gate.output), self.new_wire)
        self.target().append(GateInstance(gate.name, tuple(params), tuple(ins), tuple(wires_of(output)), gate))
        return output

    def run_boxed(self, input_type, fn):
        inputs = fresh_value(shape_of(self, input_type), self.new_wire)
        self.builders.append(CircuitBuilder())
        try:
            outputs = self.apply(fn, inputs)
        finally:
            builder = self.builders.pop()
        return inputs, builder, outputs

    def box(self, input_type, _output_type, _ev_a, _ev_b, fn):
        inputs, builder, outputs = self.run_boxed(input_type, fn)
        return builder.build(inputs, outputs)

    def unbox(self, _input_type, _output_type, _ev_a, _ev_b, circuit):
        circuit = self.as_circuit(circuit)

        def apply_circuit(value):
            self.check_cancel()
            wires = wires_of(value)
            if [w.kind for w in wires] != [w.kind for w in circuit.in_wires]:
                raise ShapeMismatch(f"a circuit expecting {len(circuit.in_wires)} wires was applied to "
                                    f"{len(wires)}")
            return splice(circuit, value, self.target(), self.new_wire)

        return VPrim("unbox", 1, apply_circuit)

    def reverse(self, _input_type, _output_type, _ev_a, _ev_b, circuit):
        return self.as_circuit(circuit).reversed()

    def exists_box(self, input_type, _index_type, _ev_a, _ev_b, family, fn):
        inputs, builder, result = self.run_boxed(input_type, fn)
        if not isinstance(result, VPair):
            raise EvalError("existsBox expects a function returning a pair")
        witness, payload = result.left, result.right
        if not matches(shape_of(self, self.apply(family, witness)), payload):
            raise ShapeMismatch("the output of existsBox does not have the shape of its type")
        circuit = builder.build(inputs, payload)
        return VPair(witness, VPrim("existsBox", 1, lambda _evidence: circuit))

    def as_circuit(self, v):
        if not isinstance(v, Circuit):
            raise NotACircuit(f"expected a circuit, found {format_value(v)}")
        return v

    # Entry points

    def evaluate(self, term):
        self.warned = False
        return self.eval((), term)


def run_deep(fn, cancel=None):
    """
    Run fn on a worker thread with a large stack, so that deep object-level
    recursion does not overflow. Ctrl-C sets `cancel` and waits for the
    worker to stop.
    """
    result = {}

    def worker():
        try:
            result["value"] = fn()
        except BaseException as e:
            result["error"] = e

    old_limit = sys.getrecursionlimit()
    old_size = threading.stack_size()
    sys.setrecursionlimit(max(old_limit, RECURSION_LIMIT))
    try:
        threading.stack_size(STACK_SIZE)
        thread = threading.Thread(target=worker, name="pydpq-eval", daemon=True)
        thread.start()
    finally:
        threading.stack_size(old_size)
    try:
        while thread.is_alive():
            thread.join(0.1)
    except KeyboardInterrupt:
        if cancel is not None:
            cancel.set()
        thread.join()
        raise
    finally:
        sys.setrecursionlimit(old_limit)
    if "error" in result:
        raise result["error"]
    return result["value"]


def _flatten_pair(v):
    items = []
    while isinstance(v, VPair):
        items.append(v.right)
        v = v.left
    items.append(v)
    items.reverse()
    return items


def format_value(v, atomic=False):
    """
    Print a runtime value: numerals, circuits as summaries, wires by name.
    """
    n = nat_value(v)
    if n is not None:
        return str(n)
    if isinstance(v, Circuit):
        return v.summary()
    if isinstance(v, Wire):
        return str(v)
    if isinstance(v, VStar):
        return "()"
    if isinstance(v, VPair):
        return "(" + ", ".join(format_value(item) for item in _flatten_pair(v)) + ")"
    if isinstance(v, VCon):
        if not v.fields:
            return v.info.name
        text = " ".join([v.info.name] + [format_value(f, atomic=True) for f in v.fields])
        return f"({text})" if atomic else text
    if isinstance(v, (VLam, VPrim)):
        return "<function>"
    if isinstance(v, VDict):
        return "<evidence>"
    return "<type>"
