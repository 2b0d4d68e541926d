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
Graph views of circuits built with networkx: the dataflow graph, its
well-formedness checks, dependency depth and equivalence up to wire
renaming.
"""

import networkx as nx

from pydpq.circuit import format_param


def dataflow_graph(circuit):
    """
    A directed multigraph with one node per gate plus one node per input
    and output position. Each wire is an edge from its producer to its
    consumer, labelled with the wire and the ports it connects.
    """
    g = nx.MultiDiGraph()
    producer = {}
    for i, w in enumerate(circuit.in_wires):
        node = ("in", i)
        g.add_node(node, label=("in", i, w.kind))
        producer[w] = (node, i)
    for index, gate in enumerate(circuit.gates):
        node = ("gate", index)
        g.add_node(node, label=(gate.name, tuple(format_param(p) for p in gate.params)))
        for port, w in enumerate(gate.ins):
            if w in producer:
                source, out_port = producer[w]
                g.add_edge(source, node, wire=w, ports=(out_port, port))
        for port, w in enumerate(gate.outs):
            producer[w] = (node, port)
    for i, w in enumerate(circuit.out_wires):
        node = ("out", i)
        g.add_node(node, label=("out", i, w.kind))
        if w in producer:
            source, out_port = producer[w]
            g.add_edge(source, node, wire=w, ports=(out_port, 0))
    return g


def dataflow_problems(circuit):
    """
    Every violation of dataflow closure and single use: wires consumed
    before (or without) being produced, produced twice, consumed twice, or
    left dangling.
    """
    problems = []
    live = set()
    seen = set()
    for w in circuit.in_wires:
        if w in seen:
            problems.append(f"input wire {w} appears twice")
        seen.add(w)
        live.add(w)
    for index, gate in enumerate(circuit.gates):
        for w in gate.ins:
            if w not in live:
                problems.append(f"gate {index} ({gate.name}) uses wire {w} which is not live")
            live.discard(w)
        for w in gate.outs:
            if w in seen:
                problems.append(f"gate {index} ({gate.name}) produces wire {w} a second time")
            seen.add(w)
            live.add(w)
    outs = set(circuit.out_wires)
    if len(outs) != len(circuit.out_wires):
        problems.append("an output wire appears twice")
    for w in circuit.out_wires:
        if w not in live:
            problems.append(f"output wire {w} is not live")
    for w in sorted(live - outs, key=lambda w: w.id):
        problems.append(f"wire {w} is neither consumed nor returned")
    return problems


def is_well_formed(circuit):
    return not dataflow_problems(circuit)


def longest_chain(circuit):
    """
    The number of gates on the longest dependency path.
    """
    g = nx.DiGraph(dataflow_graph(circuit))
    gates = g.subgraph(n for n in g.nodes if n[0] == "gate")
    if gates.number_of_nodes() == 0:
        return 0
    return nx.dag_longest_path_length(gates) + 1


def equivalent(a, b):
    """
    Whether two circuits are the same up to wire renaming: the same gates
    connected port-for-port and the same interface.
    """
    if len(a.gates) != len(b.gates) or len(a.in_wires) != len(b.in_wires) or len(a.out_wires) != len(b.out_wires):
        return False
    return nx.is_isomorphic(dataflow_graph(a), dataflow_graph(b),
                            node_match=lambda x, y: x["label"] == y["label"],
                            edge_match=_edge_match)


def _edge_match(x, y):
    # multigraph edge data: {key: attrs}
    return sorted(e["ports"] for e in x.values()) == sorted(e["ports"] for e in y.values())
