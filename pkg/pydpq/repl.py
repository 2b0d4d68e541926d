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
The interactive shell.
"""

import logging
import os
import sys

from pydpq.diagnostics import DiagnosticError, PqdError, format_diagnostics
from pydpq.interpreter import format_value
from pydpq.render_text import render_text

logger = logging.getLogger(__name__)

PROMPT = "pqd> "
HISTORY_FILE = os.path.join(os.path.expanduser("~"), ".pydpq_history")

HELP = """\
:t EXPR     print the type of EXPR
:d EXPR     evaluate EXPR to a circuit and draw it
:l PATH     load a file, replacing the one loaded before
:r          reload the last file
:q          quit
:help       show this message
EXPR        check and evaluate EXPR and print its value"""


class Repl:
    def __init__(self, session, write=print):
        self.session = session
        self.write = write
        self.commands = {
            ":t": self.cmd_type,
            ":d": self.cmd_draw,
            ":l": self.cmd_load,
            ":r": self.cmd_reload,
            ":help": self.cmd_help,
        }

    def handle(self, line):
        """
        Run one input line. Returns False when the shell should stop.
        """
        line = line.strip()
        if not line:
            return True
        if line in (":q", ":quit"):
            return False
        command, _, rest = line.partition(" ")
        try:
            if command.startswith(":"):
                handler = self.commands.get(command)
                if handler is None:
                    self.write(f"unknown command {command}, try :help")
                else:
                    handler(rest.strip())
            else:
                self.write(format_value(self.session.evaluate(line)))
        except DiagnosticError as e:
            self.write(format_diagnostics([e.diagnostic], self.session.options.json))
        except (PqdError, OSError) as e:
            self.write(f"error: {e}")
        except KeyboardInterrupt:
            self.write("interrupted")
        return True

    def cmd_type(self, source):
        self.write(self.session.type_of(source))

    def cmd_draw(self, source):
        circuit = self.session.circuit(source)
        self.write(render_text(circuit, self.session.options.ascii).rstrip("\n"))

    def cmd_load(self, path):
        self.report_load(path, self.session.load(path))

    def cmd_reload(self, _):
        self.report_load(self.session.loaded_path, self.session.reload())

    def report_load(self, path, diagnostics):
        if diagnostics:
            logger.warning("%s was not loaded", path)
            self.write(format_diagnostics(diagnostics, self.session.options.json))
        else:
            self.write(f"loaded {path}")

    def cmd_help(self, _):
        self.write(HELP)


def read_lines():
    """
    Yield input lines until end of input; uses prompt_toolkit on a
    terminal.
    """
    if sys.stdin.isatty():
        from prompt_toolkit import PromptSession
        from prompt_toolkit.history import FileHistory

        prompt_session = PromptSession(history=FileHistory(HISTORY_FILE))
        while True:
            try:
                yield prompt_session.prompt(PROMPT)
            except KeyboardInterrupt:
                continue
            except EOFError:
                return
    else:
        for line in sys.stdin:
            yield line


def repl_loop(session, path=None, lines=None):
    repl = Repl(session)
    if path is not None:
        repl.cmd_load(path)
    for line in lines if lines is not None else read_lines():
        if not repl.handle(line):
            break
    return 0
