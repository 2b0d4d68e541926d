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

import enum
import json
from dataclasses import dataclass, field


class DiagnosticCode(enum.Enum):
    LEX_ERROR = "LexError"
    PARSE_ERROR = "ParseError"
    DESUGAR_ERROR = "DesugarError"
    LINEARITY_ERROR = "LinearityError"
    TYPE_MISMATCH = "TypeMismatch"
    SIMPLENESS_ERROR = "SimplenessError"
    PARAMETER_ERROR = "ParameterError"
    CLASS_RESOLUTION_ERROR = "ClassResolutionError"
    SIMPLE_DECL_ILL_FORMED = "SimpleDeclIllFormed"
    SCOPE_ERROR = "ScopeError"
    FUEL_EXHAUSTED = "FuelExhausted"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Span:
    """
    A source position. Lines and columns count from 1.
    """
    line: int
    col: int
    file: str = "<input>"

    def __str__(self):
        return f"{self.file}:{self.line}:{self.col}"


NO_SPAN = Span(0, 0)


@dataclass
class Diagnostic:
    code: DiagnosticCode
    span: Span
    message: str
    notes: list = field(default_factory=list)

    def to_text(self):
        lines = [f"{self.code}: {self.span}: {self.message}"]
        for note in self.notes:
            lines.append(f"  note: {note}")
        return "\n".join(lines)

    def to_record(self):
        return {
            "code": str(self.code),
            "file": self.span.file,
            "line": self.span.line,
            "col": self.span.col,
            "message": self.message,
        }

    def to_json(self):
        return json.dumps(self.to_record(), sort_keys=True)


class PqdError(Exception):
    """
    Base class of every error raised by pydpq.
    """


class DiagnosticError(PqdError):
    """
    An error that is reported to the user as a single diagnostic.
    """

    code = DiagnosticCode.TYPE_MISMATCH

    def __init__(self, message, span=NO_SPAN, code=None, notes=None):
        super().__init__(message)
        self.message = message
        self.span = span
        if code is not None:
            self.code = code
        self.notes = list(notes or [])

    @property
    def diagnostic(self):
        return Diagnostic(self.code, self.span, self.message, self.notes)

    def located(self, span):
        """
        Attach a span unless the error already carries a real one.
        """
        if self.span == NO_SPAN or self.span.line == 0:
            self.span = span
        return self


class LexError(DiagnosticError):
    code = DiagnosticCode.LEX_ERROR


class ParseError(DiagnosticError):
    code = DiagnosticCode.PARSE_ERROR


class DesugarError(DiagnosticError):
    code = DiagnosticCode.DESUGAR_ERROR


class CheckError(DiagnosticError):
    """
    Raised by the checker; the code tells which rule was violated.
    """


class LinearityError(CheckError):
    code = DiagnosticCode.LINEARITY_ERROR


class FuelExhausted(PqdError):
    def __init__(self, fuel):
        super().__init__(f"type-level evaluation ran out of fuel after {fuel} unfoldings")
        self.fuel = fuel


class NotConcrete(PqdError):
    pass


class NotSimple(PqdError):
    pass


class EvalError(PqdError):
    pass


class IrreversibleGate(EvalError):
    def __init__(self, gate_name):
        super().__init__(f"gate {gate_name} has no adjoint, the circuit cannot be reversed")
        self.gate_name = gate_name


class ShapeMismatch(EvalError):
    pass


class NotACircuit(EvalError):
    pass


def format_diagnostics(diagnostics, as_json=False):
    if as_json:
        return "\n".join(d.to_json() for d in diagnostics)
    return "\n".join(d.to_text() for d in diagnostics)
