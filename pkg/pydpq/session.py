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
A checking and evaluation session: the prelude, at most one loaded user
file, and the options given on the command line.
"""

import logging
import os
import threading
from dataclasses import dataclass
from typing import Optional

from pydpq import syntax as s
from pydpq.checker import Checker
from pydpq.desugar import desugar, desugar_expr
from pydpq.diagnostics import DiagnosticError, PqdError
from pydpq.env import ModuleEnv
from pydpq.evaluation import DEFAULT_FUEL, Evaluator
from pydpq.interpreter import RuntimeEvaluator, run_deep
from pydpq.parser import parse_expression_source, parse_source
from pydpq.pretty import pretty_value

logger = logging.getLogger(__name__)

PRELUDE_ENV = "PQD_PRELUDE"
PRELUDE_PATH = os.path.join(os.path.dirname(__file__), "prelude", "Prelude.dpq")


@dataclass(frozen=True)
class Options:
    fuel: int = DEFAULT_FUEL
    prelude: Optional[str] = None
    use_prelude: bool = True
    ascii: bool = False
    json: bool = False

    @property
    def prelude_path(self):
        return self.prelude or os.environ.get(PRELUDE_ENV) or PRELUDE_PATH


class PreludeError(PqdError):
    def __init__(self, path, diagnostics):
        super().__init__(f"the prelude {path} does not check")
        self.path = path
        self.diagnostics = diagnostics


def read_source(path):
    with open(path, encoding="utf-8") as f:
        return f.read()


def parse_file(source, file):
    """
    Lex, parse and desugar a whole file. A front-end error stops the file
    and is returned as its only diagnostic.
    """
    try:
        return desugar(parse_source(source, file)), []
    except DiagnosticError as e:
        return [], [e.diagnostic]


class Session:
    def __init__(self, options=None):
        self.options = options or Options()
        self.evaluator = Evaluator(fuel=self.options.fuel)
        self.cancel = threading.Event()
        self.base = ModuleEnv()
        self.base.begin_file("<builtin>")
        Checker(self.base, self.evaluator).install_builtins()
        if self.options.use_prelude:
            self.load_prelude(self.options.prelude_path)
        self.env = self.base
        self.loaded_path = None

    def load_prelude(self, path):
        logger.info("loading prelude %s", path)
        diagnostics = self.check_source(self.base, read_source(path), path)
        if diagnostics:
            raise PreludeError(path, diagnostics)

    def check_source(self, env, source, file):
        def check():
            env.begin_file(file)
            decls, diagnostics = parse_file(source, file)
            if diagnostics:
                return diagnostics
            return Checker(env, self.evaluator).check_module(decls)
        return run_deep(check)

    def check_file(self, path):
        logger.info("checking %s", path)
        diagnostics = self.check_text(read_source(path), path)
        self.loaded_path = path
        return diagnostics

    def check_text(self, source, file="<input>"):
        """
        Check source text on top of the prelude and return every
        diagnostic. The declarations that checked stay visible to later
        commands.
        """
        env = self.base.fork()
        diagnostics = self.check_source(env, source, file)
        self.env = env
        return diagnostics

    def load(self, path):
        """
        Replace the loaded file with `path`, all or nothing: on any
        diagnostic the previous definitions stay in place.
        """
        logger.info("loading %s", path)
        env = self.base.fork()
        diagnostics = self.check_source(env, read_source(path), path)
        if not diagnostics:
            self.env = env
            self.loaded_path = path
        return diagnostics

    def reload(self):
        if self.loaded_path is None:
            raise PqdError("no file has been loaded")
        return self.load(self.loaded_path)

    # Expressions

    def parse(self, source, args=()):
        """
        Parse an expression and apply it to numeral arguments.
        """
        expr = parse_expression_source(source, "<command>")
        for arg in args:
            expr = s.App(expr, s.NatLit(int(arg), expr.span), expr.span)
        return desugar_expr(expr)

    def elaborate(self, source, args=(), insert=True):
        def check():
            self.env.begin_file("<command>")
            return Checker(self.env, self.evaluator).check_expression(self.parse(source, args), insert)
        return run_deep(check)

    def type_of(self, source):
        _, ty = self.elaborate(source, insert=False)
        return run_deep(lambda: pretty_value(self.evaluator, 0, ty))

    def evaluate(self, source, args=()):
        term, _ = self.elaborate(source, args)
        self.cancel.clear()
        runtime = RuntimeEvaluator(cancel=self.cancel, gates=self.env.gates)
        return run_deep(lambda: runtime.evaluate(term), self.cancel)

    def circuit(self, source, args=()):
        return RuntimeEvaluator().as_circuit(self.evaluate(source, args))
