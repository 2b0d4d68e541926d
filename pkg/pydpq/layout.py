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
Place the gates of a circuit on a grid of rows (wire tracks) and columns.

A wire continues on the track of the wire it replaces: output i of a gate
takes the track of input i. Tracks that a gate creates are placed next to
the first track they interact with. Each gate goes into the earliest
column where every row it spans is free.
"""

from dataclasses import dataclass, field


@dataclass
class Placement:
    index: int
    gate: object
    column: int
    in_rows: tuple
    out_rows: tuple

    @property
    def rows(self):
        return tuple(sorted(set(self.in_rows + self.out_rows)))

    @property
    def span(self):
        rows = self.rows
        return (rows[0], rows[-1]) if rows else None

    def position_rows(self):
        """
        The row of each wire position: input i, or output i where the gate
        has fewer inputs.
        """
        n = max(len(self.in_rows), len(self.out_rows))
        return [self.in_rows[i] if i < len(self.in_rows) else self.out_rows[i] for i in range(n)]


@dataclass
class Segment:
    """
    A wire drawn on `row` from column `start` to column `end`; -1 is the
    left border and the column count the right border.
    """
    row: int
    start: int
    end: int
    kind: str


@dataclass
class Layout:
    nrows: int
    columns: list = field(default_factory=list)
    segments: list = field(default_factory=list)

    @property
    def ncolumns(self):
        return len(self.columns)

    def placements(self):
        return sorted((p for column in self.columns for p in column), key=lambda p: p.index)


def assign_tracks(circuit):
    """
    Map every wire to a track number and return the tracks in row order.
    """
    track_of = {}
    next_track = 0
    for w in circuit.in_wires:
        track_of[w] = next_track
        next_track += 1
    order = list(range(next_track))
    pending = []
    for g in circuit.gates:
        tracks = []
        for i, w in enumerate(g.outs):
            if i < len(g.ins):
                track_of[w] = track_of[g.ins[i]]
            else:
                track_of[w] = next_track
                pending.append(next_track)
                next_track += 1
            tracks.append(track_of[w])
        used = [track_of[w] for w in g.ins] + tracks
        placed = [t for t in used if t in order]
        new = [t for t in used if t in pending]
        if placed and new:
            anchor = max(order.index(t) for t in placed)
            for offset, t in enumerate(dict.fromkeys(new)):
                order.insert(anchor + 1 + offset, t)
                pending.remove(t)
        elif new and not g.ins and len(g.outs) == len(new):
            continue
        elif new:
            for t in dict.fromkeys(new):
                order.append(t)
                pending.remove(t)
    order.extend(pending)
    return track_of, order


def layout(circuit):
    track_of, order = assign_tracks(circuit)
    row_of_track = {t: r for r, t in enumerate(order)}

    def row(w):
        return row_of_track[track_of[w]]

    free = [0] * len(order)
    columns = []
    produced_at = {w: -1 for w in circuit.in_wires}
    consumed_at = {}
    for index, g in enumerate(circuit.gates):
        in_rows = tuple(row(w) for w in g.ins)
        out_rows = tuple(row(w) for w in g.outs)
        rows = set(in_rows + out_rows)
        if rows:
            span = range(min(rows), max(rows) + 1)
            column = max(free[r] for r in span)
            for r in span:
                free[r] = column + 1
        else:
            column = max(free, default=0)
        while len(columns) <= column:
            columns.append([])
        columns[column].append(Placement(index, g, column, in_rows, out_rows))
        for w in g.ins:
            consumed_at[w] = column
        for w in g.outs:
            produced_at[w] = column
    ncolumns = len(columns)
    segments = []
    for w, start in produced_at.items():
        segments.append(Segment(row(w), start, consumed_at.get(w, ncolumns), w.kind))
    segments.sort(key=lambda s: (s.row, s.start))
    return Layout(len(order), columns, segments)
