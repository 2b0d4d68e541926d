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
Text diagrams: one line per wire track, gates aligned in columns. Qubit
wires are drawn with single lines and classical wires with double lines.
"""

from pydpq.circuit import format_param
from pydpq.layout import layout

UNICODE = {"qubit": "─", "bit": "═", "vertical": "│", "cross": "┼", "oplus": "⊕", "dot": "●", "cdot": "◉"}
ASCII = {"qubit": "-", "bit": "=", "vertical": "|", "cross": "+", "oplus": "+", "dot": "*", "cdot": "o"}


def gate_label(gate):
    label = gate.label
    if gate.params:
        label += "(" + ",".join(format_param(p) for p in gate.params) + ")"
    return label


def cell_texts(placement, chars):
    """
    The text of the gate on each of its rows.
    """
    g = placement.gate
    glyphs = g.gate.glyphs if g.gate is not None else ()
    texts = {}
    for i, r in enumerate(placement.position_rows()):
        glyph = glyphs[i] if i < len(glyphs) else "box"
        texts[r] = chars[glyph] if glyph in ("oplus", "dot", "cdot") else gate_label(g)
    return texts


def render_text(circuit, ascii_only=False):
    chars = ASCII if ascii_only else UNICODE
    lay = layout(circuit)
    if lay.nrows == 0:
        return ""

    def wire_char(kind):
        return chars["bit"] if kind == "Bit" else chars["qubit"]

    def wire_at(r, position):
        """
        The wire character on row r at a (possibly fractional) column
        position, or None.
        """
        for s in lay.segments:
            if s.row == r and s.start < position < s.end:
                return wire_char(s.kind)
        return None

    lines = [[] for _ in range(lay.nrows)]
    for r in range(lay.nrows):
        lines[r].append(wire_at(r, -0.5) or " ")
    for k, column in enumerate(lay.columns):
        cells = {}
        verticals = set()
        for p in column:
            cells.update(cell_texts(p, chars))
            if p.span is None:
                continue
            low, high = p.span
            verticals.update(r for r in range(low, high + 1) if r not in p.rows)
        width = max(len(t) for t in cells.values()) + 2 if cells else 3
        for r in range(lay.nrows):
            left = wire_at(r, k - 0.5)
            right = wire_at(r, k + 0.5)
            if r in cells:
                text = cells[r]
                pad = width - len(text)
                lines[r].append((left or " ") * (pad // 2) + text + (right or " ") * (pad - pad // 2))
            elif r in verticals:
                through = wire_at(r, k)
                mid = chars["cross"] if through else chars["vertical"]
                fill = through or " "
                lines[r].append(fill * (width // 2) + mid + fill * (width - width // 2 - 1))
            else:
                lines[r].append((wire_at(r, k) or " ") * width)
        for r in range(lay.nrows):
            lines[r].append(wire_at(r, k + 0.5) or " ")
    return "\n".join("".join(parts).rstrip() for parts in lines) + "\n"
