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

from pydpq import syntax as s
from pydpq.diagnostics import ParseError
from pydpq.lexer import lex
from pydpq.tokens import TokenKind


class _Signature:
    def __init__(self, name, type_, span):
        self.name = name
        self.type = type_
        self.span = span


class Parser:
    """
    Recursive-descent parser over a layout-resolved token stream.
    """

    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    # Token helpers

    def peek(self, offset=0):
        index = min(self.pos + offset, len(self.tokens) - 1)
        return self.tokens[index]

    def advance(self):
        tok = self.peek()
        if tok.kind is not TokenKind.EOF:
            self.pos += 1
        return tok

    def at_eof(self):
        return self.peek().kind is TokenKind.EOF

    def error(self, *expected):
        tok = self.peek()
        wanted = ", ".join(expected)
        raise ParseError(f"expected {wanted}, found {tok}", tok.span)

    def expect_symbol(self, text):
        if not self.peek().is_symbol(text):
            self.error(f"'{text}'")
        return self.advance()

    def expect_keyword(self, text):
        if not self.peek().is_keyword(text):
            self.error(f"'{text}'")
        return self.advance()

    def expect_kind(self, kind):
        if self.peek().kind is not kind:
            self.error(kind.value)
        return self.advance()

    def at_separator(self):
        return self.peek().separates()

    def at_block_end(self):
        tok = self.peek()
        return tok.closes_block() or tok.kind is TokenKind.EOF

    def parse_block(self, item):
        if not self.peek().opens_block():
            self.error("a block")
        self.advance()
        items = []
        while True:
            tok = self.peek()
            if tok.closes_block():
                self.advance()
                return items
            if tok.separates():
                self.advance()
                continue
            if tok.kind is TokenKind.EOF:
                self.error("'}'")
            items.append(item())
            if not (self.at_separator() or self.peek().closes_block()):
                self.error("';'", "'}'")

    # Module

    def parse_module(self):
        decls = []
        signatures = {}
        while not self.at_eof():
            if self.at_separator():
                self.advance()
                continue
            decl = self.parse_decl()
            if isinstance(decl, _Signature):
                if decl.name in signatures:
                    raise ParseError(f"duplicate type signature for {decl.name}", decl.span)
                signatures[decl.name] = decl
            elif isinstance(decl, s.Equation):
                signature = signatures.pop(decl.name, None)
                if signature is None:
                    raise ParseError(f"missing type signature for {decl.name}", decl.span)
                decls.append(s.TermDef(decl.name, signature.type, decl.params, decl.body,
                                       signature.span, decl.span))
            else:
                decls.append(decl)
            if not (self.at_separator() or self.at_eof()):
                self.error("end of declaration")
        for signature in signatures.values():
            raise ParseError(f"type signature for {signature.name} lacks a defining equation",
                             signature.span)
        return decls

    def parse_decl(self):
        tok = self.peek()
        if tok.is_keyword("data"):
            return self.parse_data()
        if tok.is_keyword("simple"):
            return self.parse_simple()
        if tok.is_keyword("object"):
            self.advance()
            name = self.expect_kind(TokenKind.CONID)
            return s.ObjectDecl(name.text, tok.span)
        if tok.is_keyword("gate"):
            return self.parse_gate()
        if tok.is_keyword("class"):
            return self.parse_class()
        if tok.is_keyword("instance"):
            return self.parse_instance()
        if tok.is_keyword("adjoint"):
            self.advance()
            names = [self.expect_kind(TokenKind.CONID).text]
            if self.peek().kind is TokenKind.CONID:
                names.append(self.advance().text)
            return s.AdjointDecl(names, tok.span)
        if tok.is_keyword("render"):
            return self.parse_render()
        if tok.kind is TokenKind.IDENT:
            if self.peek(1).is_symbol(":"):
                self.advance()
                self.advance()
                return _Signature(tok.text, self.parse_expr(), tok.span)
            return self.parse_equation()
        self.error("a declaration")

    def parse_params(self):
        params = []
        while True:
            tok = self.peek()
            if tok.kind is TokenKind.IDENT:
                self.advance()
                params.append(s.Param(tok.text, None, tok.span))
            elif tok.is_symbol("(") and self.peek(1).kind is TokenKind.IDENT and self.peek(2).is_symbol(":"):
                self.advance()
                name = self.advance()
                self.advance()
                kind = self.parse_expr()
                self.expect_symbol(")")
                params.append(s.Param(name.text, kind, name.span))
            else:
                return params

    def parse_constructor(self):
        name = self.expect_kind(TokenKind.CONID)
        fields = []
        while self.at_atom_start():
            fields.append(self.parse_atom())
        return s.Constructor(name.text, fields, name.span)

    def parse_data(self):
        start = self.advance()
        name = self.expect_kind(TokenKind.CONID)
        params = self.parse_params()
        self.expect_symbol("=")
        constructors = [self.parse_constructor()]
        while self.peek().is_symbol("|"):
            self.advance()
            constructors.append(self.parse_constructor())
        return s.DataDecl(name.text, params, constructors, start.span)

    def parse_simple(self):
        start = self.advance()
        name = self.expect_kind(TokenKind.CONID)
        params = self.parse_params()
        self.expect_symbol(":")
        kind = self.parse_expr()
        self.expect_keyword("where")
        clauses = self.parse_block(self.parse_simple_clause)
        return s.SimpleDecl(name.text, params, kind, clauses, start.span)

    def parse_simple_clause(self):
        head = self.expect_kind(TokenKind.CONID)
        args = []
        while self.at_atom_start():
            args.append(self.parse_atom())
        self.expect_symbol("=")
        alternatives = [self.parse_constructor()]
        while self.peek().is_symbol("|"):
            self.advance()
            alternatives.append(self.parse_constructor())
        return s.SimpleClause([s.Con(head.text, head.span)] + args, alternatives, head.span)

    def parse_gate(self):
        start = self.advance()
        name = self.expect_kind(TokenKind.CONID)
        param_kinds = []
        while self.at_atom_start():
            param_kinds.append(self.parse_atom())
        self.expect_symbol(":")
        wire_type = self.parse_expr()
        return s.GateDecl(name.text, param_kinds, wire_type, start.span)

    def parse_method_sig(self):
        name = self.expect_kind(TokenKind.IDENT)
        self.expect_symbol(":")
        return s.MethodSig(name.text, self.parse_expr(), name.span)

    def parse_class(self):
        start = self.advance()
        name = self.expect_kind(TokenKind.CONID)
        params = self.parse_params()
        self.expect_keyword("where")
        methods = self.parse_block(self.parse_method_sig)
        return s.ClassDecl(name.text, params, methods, start.span)

    def parse_instance(self):
        start = self.advance()
        head = self.parse_expr()
        constraints = []
        if isinstance(head, s.Constrained):
            constraints = head.constraints
            head = head.body
        fn, args = s.spine(head)
        if not isinstance(fn, s.Con) or len(args) != 1:
            raise ParseError("an instance head is a class applied to one type", start.span)
        self.expect_keyword("where")
        methods = self.parse_block(self.parse_equation)
        return s.InstanceDecl(fn.name, args[0], constraints, methods, start.span)

    def parse_render(self):
        start = self.advance()
        gate = self.expect_kind(TokenKind.CONID)
        glyphs = []
        while self.peek().kind is TokenKind.IDENT:
            glyphs.append(self.advance().text)
        label = None
        if self.peek().kind is TokenKind.STRING:
            label = self.advance().text
        return s.RenderDecl(gate.text, glyphs, label, start.span)

    def parse_equation(self):
        name = self.expect_kind(TokenKind.IDENT)
        params = []
        while self.peek().kind is TokenKind.IDENT:
            params.append(self.advance().text)
        self.expect_symbol("=")
        body = self.parse_expr()
        return s.Equation(name.text, params, body, name.span)

    # Expressions

    def binder_group_end(self, pos):
        """
        If a binder group `(x y : A)` starts at pos, return the index just
        past its closing parenthesis.
        """
        tokens = self.tokens
        if not tokens[pos].is_symbol("("):
            return None
        i = pos + 1
        if tokens[i].kind is not TokenKind.IDENT:
            return None
        while tokens[i].kind is TokenKind.IDENT:
            i += 1
        if not tokens[i].is_symbol(":"):
            return None
        depth = 1
        while depth > 0:
            i += 1
            tok = tokens[i]
            if tok.kind is TokenKind.EOF:
                return None
            if tok.is_symbol("(", "[|", "{"):
                depth += 1
            elif tok.is_symbol(")", "|]", "}"):
                depth -= 1
        return i + 1

    def parse_binder_group(self, close=")"):
        self.advance()
        names = []
        while self.peek().kind is TokenKind.IDENT:
            names.append(self.advance().text)
        self.expect_symbol(":")
        dom = self.parse_expr()
        self.expect_symbol(close)
        return names, dom

    def parse_expr(self):
        tok = self.peek()
        if tok.is_symbol("\\", "λ"):
            return self.parse_lambda()
        if tok.is_keyword("let"):
            return self.parse_let()
        if tok.is_keyword("case"):
            return self.parse_case()
        if tok.is_keyword("do"):
            self.advance()
            return s.Do(self.parse_block(self.parse_stmt), tok.span)
        if tok.is_keyword("forall"):
            return self.parse_forall()
        if tok.is_symbol("!"):
            nxt = self.peek(1)
            if nxt.is_keyword("forall") or nxt.is_symbol("{") or self.binder_group_end(self.pos + 1):
                self.advance()
                return s.Bang(self.parse_expr(), tok.span)
        if tok.is_symbol("{"):
            self.advance()
            names = []
            while self.peek().kind is TokenKind.IDENT:
                names.append(self.advance().text)
            if not names:
                self.error("a binder name")
            self.expect_symbol(":")
            dom = self.parse_expr()
            self.expect_symbol("}")
            self.expect_symbol("->")
            return s.Pi(names, s.Icit.IMPLICIT, dom, self.parse_expr(), tok.span)
        end = self.binder_group_end(self.pos)
        if end is not None and self.tokens[end].is_symbol("->"):
            names, dom = self.parse_binder_group()
            self.expect_symbol("->")
            return s.Pi(names, s.Icit.EXPLICIT, dom, self.parse_expr(), tok.span)

        left = self.parse_tensor_or_exists()
        if self.peek().is_symbol("->"):
            self.advance()
            return s.Pi([None], s.Icit.EXPLICIT, left, self.parse_expr(), tok.span)
        if self.peek().is_symbol("=>"):
            self.advance()
            constraints = left.items if isinstance(left, s.Tuple) else [left]
            return s.Constrained(constraints, self.parse_expr(), tok.span)
        return left

    def parse_forall(self):
        start = self.advance()
        groups = []
        while True:
            tok = self.peek()
            if tok.kind is TokenKind.IDENT:
                names = []
                while self.peek().kind is TokenKind.IDENT:
                    names.append(self.advance().text)
                groups.append((names, None))
            elif self.binder_group_end(self.pos) is not None:
                groups.append(self.parse_binder_group())
            else:
                break
        if not groups:
            self.error("a binder")
        self.expect_symbol("->")
        body = self.parse_expr()
        for names, dom in reversed(groups):
            body = s.Pi(names, s.Icit.IRRELEVANT, dom, body, start.span)
        return body

    def parse_tensor_or_exists(self):
        tok = self.peek()
        end = self.binder_group_end(self.pos)
        if end is not None:
            if not self.tokens[end].is_symbol("*"):
                raise ParseError("a binder must be followed by '->' or '*'", tok.span)
            names, dom = self.parse_binder_group()
            self.expect_symbol("*")
            return s.Exists(names, dom, self.parse_tensor_or_exists(), tok.span)
        return self.parse_tensor()

    def parse_tensor(self):
        left = self.parse_or()
        while self.peek().is_symbol("*"):
            tok = self.advance()
            left = s.Tensor(left, self.parse_or(), tok.span)
        return left

    def parse_or(self):
        left = self.parse_and()
        while self.peek().is_symbol("||"):
            tok = self.advance()
            left = s.BinOp("||", left, self.parse_and(), tok.span)
        return left

    def parse_and(self):
        left = self.parse_app()
        while self.peek().is_symbol("&&"):
            tok = self.advance()
            left = s.BinOp("&&", left, self.parse_app(), tok.span)
        return left

    def at_atom_start(self):
        tok = self.peek()
        if tok.kind in (TokenKind.IDENT, TokenKind.CONID, TokenKind.NAT):
            return True
        if tok.is_keyword("Type", "Unit", "Circ"):
            return True
        return tok.is_symbol("(", "[|", "!")

    def parse_app(self):
        expr = self.parse_atom()
        while self.at_atom_start():
            arg = self.parse_atom()
            expr = s.App(expr, arg, expr.span)
        return expr

    def parse_atom(self):
        tok = self.peek()
        if tok.kind is TokenKind.IDENT:
            self.advance()
            return s.Var(tok.text, tok.span)
        if tok.kind is TokenKind.CONID:
            self.advance()
            return s.Con(tok.text, tok.span)
        if tok.kind is TokenKind.NAT:
            self.advance()
            return s.NatLit(int(tok.text), tok.span)
        if tok.is_keyword("Type"):
            self.advance()
            return s.TypeKind(tok.span)
        if tok.is_keyword("Unit"):
            self.advance()
            return s.UnitType(tok.span)
        if tok.is_keyword("Circ"):
            self.advance()
            self.expect_symbol("(")
            input_ = self.parse_expr()
            self.expect_symbol(",")
            output = self.parse_expr()
            self.expect_symbol(")")
            return s.CircType(input_, output, tok.span)
        if tok.is_symbol("!"):
            self.advance()
            return s.Bang(self.parse_atom(), tok.span)
        if tok.is_symbol("[|"):
            self.advance()
            expr = self.parse_expr()
            self.expect_symbol("|]")
            return s.Idiom(expr, tok.span)
        if tok.is_symbol("("):
            self.advance()
            if self.peek().is_symbol(")"):
                self.advance()
                return s.UnitVal(tok.span)
            items = [self.parse_expr()]
            while self.peek().is_symbol(","):
                self.advance()
                items.append(self.parse_expr())
            self.expect_symbol(")")
            if len(items) == 1:
                return items[0]
            return s.Tuple(items, tok.span)
        self.error("an expression")

    def parse_lambda(self):
        start = self.advance()
        params = []
        while not self.peek().is_symbol("->"):
            params.append(self.parse_apat())
        if not params:
            self.error("a lambda parameter")
        self.expect_symbol("->")
        return s.Lam(params, self.parse_expr(), start.span)

    def parse_binding(self):
        start = self.peek()
        pattern = self.parse_pattern()
        if self.peek().is_symbol("<-"):
            self.advance()
            return s.Binding(pattern, self.parse_expr(), True, start.span)
        self.expect_symbol("=")
        return s.Binding(pattern, self.parse_expr(), False, start.span)

    def parse_let(self):
        start = self.advance()
        bindings = self.parse_block(self.parse_binding)
        if not bindings:
            raise ParseError("empty let", start.span)
        self.expect_keyword("in")
        return s.Let(bindings, self.parse_expr(), start.span)

    def parse_branch(self):
        con = self.expect_kind(TokenKind.CONID)
        names = []
        while self.peek().kind is TokenKind.IDENT:
            names.append(self.advance().text)
        self.expect_symbol("->")
        return s.Branch(con.text, names, self.parse_expr(), con.span)

    def parse_case(self):
        start = self.advance()
        scrutinee = self.parse_expr()
        self.expect_keyword("of")
        branches = self.parse_block(self.parse_branch)
        return s.Case(scrutinee, branches, start.span)

    def parse_stmt(self):
        tok = self.peek()
        if tok.is_keyword("let"):
            saved = self.pos
            self.advance()
            bindings = self.parse_block(self.parse_binding)
            if self.peek().is_keyword("in"):
                self.pos = saved
                return s.ExprStmt(self.parse_expr(), tok.span)
            return s.LetStmt(bindings, tok.span)
        saved = self.pos
        try:
            pattern = self.parse_pattern()
            if self.peek().is_symbol("<-"):
                self.advance()
                return s.BindStmt(pattern, self.parse_expr(), tok.span)
        except ParseError:
            pass
        self.pos = saved
        return s.ExprStmt(self.parse_expr(), tok.span)

    # Patterns

    def parse_pattern(self):
        tok = self.peek()
        if tok.kind is TokenKind.CONID:
            self.advance()
            args = []
            while self.peek().kind is TokenKind.IDENT or self.peek().is_symbol("(") \
                    or self.peek().kind is TokenKind.CONID:
                args.append(self.parse_apat())
            return s.PCon(tok.text, args, tok.span)
        return self.parse_apat()

    def parse_apat(self):
        tok = self.peek()
        if tok.kind is TokenKind.IDENT:
            self.advance()
            if tok.text == "_":
                return s.PWild(tok.span)
            return s.PVar(tok.text, tok.span)
        if tok.kind is TokenKind.CONID:
            self.advance()
            return s.PCon(tok.text, [], tok.span)
        if tok.is_symbol("("):
            self.advance()
            if self.peek().is_symbol(")"):
                self.advance()
                return s.PUnit(tok.span)
            items = [self.parse_pattern()]
            while self.peek().is_symbol(","):
                self.advance()
                items.append(self.parse_pattern())
            self.expect_symbol(")")
            if len(items) == 1:
                return items[0]
            return s.PTuple(items, tok.span)
        self.error("a pattern")


def parse_module(tokens):
    return Parser(tokens).parse_module()


def parse_expression(tokens):
    parser = Parser(tokens)
    expr = parser.parse_expr()
    while parser.at_separator():
        parser.advance()
    if not parser.at_eof():
        parser.error("end of input")
    return expr


def parse_source(source, file="<input>"):
    return parse_module(lex(source, file))


def parse_expression_source(source, file="<input>"):
    return parse_expression(lex(source, file))
