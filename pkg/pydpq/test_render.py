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

import os
import pathlib
import unittest

from pydpq.layout import layout
from pydpq.render_svg import SvgOptions, render_svg
from pydpq.render_text import render_text
from pydpq.session import Session

GOLDEN = pathlib.Path(__file__).parent.parent / "corpus" / "golden"
SVG_GOLDENS = {"bell00Box": "bell00Box", "qftBox5": "qftBox 5", "qftBox5.reversed": "reverse (qftBox 5)"}


class TestLayout(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.session = Session()

    def column_names(self, source):
        lay = layout(self.session.circuit(source))
        return [[p.gate.name for p in column] for column in lay.columns]

    def test_bell_pair_columns(self):
        self.assertEqual(self.column_names("bell00Box"), [["Init0", "Init0"], ["H"], ["CNot"]])

    def test_fourier_transform_columns(self):
        self.assertEqual(self.column_names("qftBox 2"), [["H"], ["R"], ["H"]])
        self.assertEqual(layout(self.session.circuit("qftBox 2")).nrows, 2)

    def test_rows_follow_the_wires(self):
        lay = layout(self.session.circuit("bell00Box"))
        (cnot,) = lay.columns[2]
        self.assertEqual(cnot.in_rows, (1, 0))
        self.assertEqual(cnot.out_rows, (1, 0))

    def test_every_gate_is_placed_once(self):
        c = self.session.circuit("adderRev")
        self.assertEqual([p.index for p in layout(c).placements()], list(range(len(c))))

    def test_segments_stay_on_their_row(self):
        lay = layout(self.session.circuit("teleBox"))
        for s in lay.segments:
            self.assertLess(s.start, s.end)
            self.assertLess(s.row, lay.nrows)


class TestText(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.session = Session()

    def test_golden(self):
        c = self.session.circuit("bell00Box")
        self.assertEqual(render_text(c), (GOLDEN / "bell00Box.txt").read_text(encoding="utf-8"))
        self.assertEqual(render_text(c, ascii_only=True),
                         (GOLDEN / "bell00Box.ascii.txt").read_text(encoding="utf-8"))

    def test_teleportation_golden(self):
        text = render_text(self.session.circuit("teleBox"))
        self.assertEqual(text, (GOLDEN / "teleBox.txt").read_text(encoding="utf-8"))

    def test_empty_circuit(self):
        self.assertEqual(render_text(self.session.circuit("box Unit (\\u -> u)")), "")

    def test_identity(self):
        self.assertEqual(render_text(self.session.circuit("box Qubit (\\x -> x)")), "─\n")

    def test_classical_wires(self):
        text = render_text(self.session.circuit("teleBox"))
        self.assertIn("═", text)
        self.assertIn("Meas", text)

    def test_parameters_in_labels(self):
        self.assertIn("R(2)", render_text(self.session.circuit("qftBox 2")))
        self.assertIn("R*(2)", render_text(self.session.circuit("boxQftRev 2")))

    def test_ascii_only(self):
        text = render_text(self.session.circuit("qftBox 4"), ascii_only=True)
        self.assertTrue(text.isascii())
        self.assertEqual(len(text.splitlines()), 4)


class TestSvg(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.session = Session()

    def test_deterministic(self):
        c = self.session.circuit("teleBox")
        self.assertEqual(render_svg(c), render_svg(self.session.circuit("teleBox")))

    def test_one_group_per_gate(self):
        svg = render_svg(self.session.circuit("qftBox 5"))
        self.assertIn("<svg", svg)
        self.assertEqual(svg.count('id="gate-'), 15)

    def test_adjoint_labels(self):
        svg = render_svg(self.session.circuit("qftBox 5").reversed())
        self.assertIn("R*", svg)

    def test_goldens(self):
        recorded = []
        for name, source in SVG_GOLDENS.items():
            with self.subTest(name=name):
                svg = render_svg(self.session.circuit(source))
                path = GOLDEN / f"{name}.svg"
                if os.environ.get("PYDPQ_UPDATE_GOLDENS") or not path.exists():
                    path.write_bytes(svg.encode("utf-8"))
                    recorded.append(path.name)
                self.assertEqual(svg, path.read_bytes().decode("utf-8"))
        if recorded:
            self.skipTest(f"recorded {', '.join(recorded)}; review them and rerun")

    def test_options(self):
        c = self.session.circuit("bell00Box")
        self.assertNotEqual(render_svg(c), render_svg(c, SvgOptions(column_width=80)))
        self.assertIn("#ff0000", render_svg(c, SvgOptions(stroke="#ff0000")))


if __name__ == '__main__':
    unittest.main()
