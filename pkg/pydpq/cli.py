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

import argparse
import logging
import sys

from pydpq.diagnostics import DiagnosticError, PqdError, format_diagnostics
from pydpq.evaluation import DEFAULT_FUEL
from pydpq.interpreter import format_value
from pydpq.render_svg import render_svg
from pydpq.render_text import render_text
from pydpq.repl import repl_loop
from pydpq.session import Options, PreludeError, Session

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DIAGNOSTICS = 1
EXIT_USAGE = 2
EXIT_INTERRUPTED = 130


def make_session(args):
    options = Options(fuel=args.fuel, use_prelude=not args.no_prelude,
                      ascii=getattr(args, "ascii", False), json=args.json_diagnostics)
    return Session(options)


def report(args, diagnostics):
    if diagnostics:
        print(format_diagnostics(diagnostics, args.json_diagnostics))
    return EXIT_DIAGNOSTICS if diagnostics else EXIT_OK


def check(args):
    session = make_session(args)
    return report(args, session.check_file(args.path))


def run(args):
    session = make_session(args)
    diagnostics = session.load(args.path)
    if diagnostics:
        return report(args, diagnostics)
    print(format_value(session.evaluate(args.expr, args.args)))
    return EXIT_OK


def draw(args):
    session = make_session(args)
    diagnostics = session.load(args.path)
    if diagnostics:
        return report(args, diagnostics)
    circuit = session.circuit(args.name, args.args)
    if args.format == "svg":
        output = render_svg(circuit)
    else:
        output = render_text(circuit, args.ascii)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(output)
    else:
        sys.stdout.write(output)
    return EXIT_OK


def repl(args):
    return repl_loop(make_session(args), args.path)


def execute(args):
    try:
        return args.func(args)
    except PreludeError as e:
        print(f"error: {e}", file=sys.stderr)
        print(format_diagnostics(e.diagnostics, args.json_diagnostics))
        return EXIT_DIAGNOSTICS
    except DiagnosticError as e:
        return report(args, [e.diagnostic])
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except PqdError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DIAGNOSTICS


def main(argv=None):
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--fuel',
                        type=int,
                        default=DEFAULT_FUEL,
                        help='maximum number of definition unfoldings while checking one declaration')
    common.add_argument('--no-prelude',
                        action='store_true',
                        help='do not load the prelude')
    common.add_argument('--json-diagnostics',
                        action='store_true',
                        help='print diagnostics as JSON records, one per line')
    common.add_argument('-v', '--verbose',
                        action='store_true',
                        help='log debugging information')

    parser = argparse.ArgumentParser(
        description='pydpq - type check Proto-Quipper-D programs and generate, run and draw their circuits')

    subparsers = parser.add_subparsers(title="commands",
                                       required=True,
                                       dest="command")

    check_parser = subparsers.add_parser('check',
                                         parents=[common],
                                         help="type check a file")
    check_parser.add_argument('path',
                              help='source file')
    check_parser.set_defaults(func=check)

    run_parser = subparsers.add_parser('run',
                                       parents=[common],
                                       help="evaluate an expression in the context of a file")
    run_parser.add_argument('path',
                            help='source file')
    run_parser.add_argument('expr',
                            help='expression to evaluate')
    run_parser.add_argument('args',
                            type=int,
                            nargs='*',
                            help='numerals the expression is applied to')
    run_parser.set_defaults(func=run)

    draw_parser = subparsers.add_parser('draw',
                                        parents=[common],
                                        help="generate a circuit and draw it")
    draw_parser.add_argument('path',
                             help='source file')
    draw_parser.add_argument('name',
                             help='circuit-valued expression')
    draw_parser.add_argument('args',
                             type=int,
                             nargs='*',
                             help='numerals the expression is applied to')
    draw_parser.add_argument('-f', '--format',
                             choices=['text', 'svg'],
                             default='text',
                             help='diagram format')
    draw_parser.add_argument('-o', '--output',
                             help='write the diagram to a file instead of stdout')
    draw_parser.add_argument('--ascii',
                             action='store_true',
                             help='draw text diagrams with ASCII characters only')
    draw_parser.set_defaults(func=draw)

    repl_parser = subparsers.add_parser('repl',
                                        parents=[common],
                                        help="start the interactive shell")
    repl_parser.add_argument('path',
                             nargs='?',
                             help='file to load')
    repl_parser.add_argument('--ascii',
                             action='store_true',
                             help='draw text diagrams with ASCII characters only')
    repl_parser.set_defaults(func=repl)

    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        status = execute(args)
    except KeyboardInterrupt:
        print("interrupted", file=sys.stderr)
        status = EXIT_INTERRUPTED
    sys.exit(status)


if __name__ == '__main__':
    main()
