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
SVG diagrams drawn with drawsvg from the same layout as the text
renderer. Element order and ids depend only on the circuit, so the output
is byte-identical across runs.
"""

from dataclasses import dataclass

import drawsvg as draw

from pydpq.layout import layout
from pydpq.render_text import gate_label


@dataclass(frozen=True)
class SvgOptions:
    column_width: float = 56
    row_height: float = 40
    margin: float = 24
    box_height: float = 26
    font_size: float = 13
    stroke: str = "#000000"
    background: str = "#ffffff"


class SvgRenderer:
    def __init__(self, options=None):
        self.options = options or SvgOptions()

    def x(self, column):
        o = self.options
        return o.margin + (column + 0.5) * o.column_width

    def y(self, row):
        o = self.options
        return o.margin + (row + 0.5) * o.row_height

    def render(self, circuit):
        o = self.options
        lay = layout(circuit)
        width = 2 * o.margin + max(lay.ncolumns, 1) * o.column_width
        height = 2 * o.margin + max(lay.nrows, 1) * o.row_height
        d = draw.Drawing(width, height)
        d.append(draw.Rectangle(0, 0, width, height, fill=o.background))
        wires = draw.Group(id="wires")
        for i, s in enumerate(lay.segments):
            self.render_segment(wires, i, s, lay.ncolumns)
        d.append(wires)
        for p in lay.placements():
            d.append(self.render_gate(p))
        return d

    def render_segment(self, group, i, s, ncolumns):
        o = self.options
        x1 = self.x(s.start) if s.start >= 0 else o.margin / 2
        x2 = self.x(s.end) if s.end < ncolumns else self.x(ncolumns - 1) + o.column_width / 2 + o.margin / 2
        y = self.y(s.row)
        if s.kind == "Bit":
            group.append(draw.Line(x1, y - 2, x2, y - 2, stroke=o.stroke, id=f"wire-{i}a"))
            group.append(draw.Line(x1, y + 2, x2, y + 2, stroke=o.stroke, id=f"wire-{i}b"))
        else:
            group.append(draw.Line(x1, y, x2, y, stroke=o.stroke, id=f"wire-{i}"))

    def render_gate(self, p):
        o = self.options
        g = p.gate
        group = draw.Group(id=f"gate-{p.index}")
        x = self.x(p.column)
        span = p.span
        if span is not None and span[0] != span[1]:
            group.append(draw.Line(x, self.y(span[0]), x, self.y(span[1]), stroke=o.stroke))
        glyphs = g.gate.glyphs if g.gate is not None else ()
        for i, r in enumerate(p.position_rows()):
            glyph = glyphs[i] if i < len(glyphs) else "box"
            self.render_glyph(group, glyph, x, self.y(r), gate_label(g))
        return group

    def render_glyph(self, group, glyph, x, y, label):
        o = self.options
        h = o.box_height
        if glyph == "oplus":
            r = h / 3
            group.append(draw.Circle(x, y, r, fill=o.background, stroke=o.stroke))
            group.append(draw.Line(x - r, y, x + r, y, stroke=o.stroke))
            group.append(draw.Line(x, y - r, x, y + r, stroke=o.stroke))
        elif glyph in ("dot", "cdot"):
            group.append(draw.Circle(x, y, h / 6, fill=o.stroke))
        elif glyph == "init":
            group.append(draw.Lines(x - h / 3, y - h / 2, x + h / 3, y, x - h / 3, y + h / 2, close=True,
                                    fill=o.background, stroke=o.stroke))
            group.append(draw.Text("0", o.font_size * 0.8, x - h / 8, y, text_anchor="middle",
                                   dominant_baseline="middle"))
        elif glyph == "term":
            group.append(draw.Lines(x + h / 3, y - h / 2, x - h / 3, y, x + h / 3, y + h / 2, close=True,
                                    fill=o.background, stroke=o.stroke))
            group.append(draw.Text("0", o.font_size * 0.8, x + h / 8, y, text_anchor="middle",
                                   dominant_baseline="middle"))
        elif glyph == "discard":
            group.append(draw.Line(x, y - h / 3, x, y + h / 3, stroke=o.stroke, stroke_width=3))
        else:
            w = max(h, 9 * len(label) + 10)
            group.append(draw.Rectangle(x - w / 2, y - h / 2, w, h, fill=o.background, stroke=o.stroke))
            text = "M" if glyph == "meas" else label
            group.append(draw.Text(text, o.font_size, x, y, text_anchor="middle", dominant_baseline="middle",
                                   font_family="monospace"))


def render_svg(circuit, options=None):
    """
    Render a circuit to a standalone SVG document.
    """
    return SvgRenderer(options).render(circuit).as_svg()
