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

from dataclasses import dataclass

from pydpq.diagnostics import LexError, Span
from pydpq.tokens import BLOCK_KEYWORDS, KEYWORDS, SYMBOLS, Token, TokenKind


def _is_ident_start(c):
    return c == "_" or ("a" <= c <= "z") or ("A" <= c <= "Z")


def _is_ident_char(c):
    return _is_ident_start(c) or c.isdigit() or c == "'"


def tokenize(source, file="<input>"):
    """
    Split .dpq source into tokens. Layout is not resolved here, see
    resolve_layout().
    """
    tokens = []
    i = 0
    line = 1
    col = 1
    n = len(source)

    while i < n:
        c = source[i]

        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r\f":
            i += 1
            col += 1
            continue
        if source.startswith("--", i):
            while i < n and source[i] != "\n":
                i += 1
            continue

        span = Span(line, col, file)

        if _is_ident_start(c):
            j = i + 1
            while j < n and _is_ident_char(source[j]):
                j += 1
            text = source[i:j]
            if text in KEYWORDS:
                kind = TokenKind.KEYWORD
            elif "A" <= text[0] <= "Z":
                kind = TokenKind.CONID
            else:
                kind = TokenKind.IDENT
            tokens.append(Token(kind, text, span))
            col += j - i
            i = j
            continue

        if c.isdigit():
            j = i + 1
            while j < n and source[j].isdigit():
                j += 1
            if j < n and _is_ident_start(source[j]):
                raise LexError(f"malformed number '{source[i:j + 1]}'", span)
            tokens.append(Token(TokenKind.NAT, source[i:j], span))
            col += j - i
            i = j
            continue

        if c == '"':
            j = i + 1
            while j < n and source[j] not in '"\n':
                j += 1
            if j >= n or source[j] != '"':
                raise LexError("unterminated string literal", span)
            tokens.append(Token(TokenKind.STRING, source[i + 1:j], span))
            col += j + 1 - i
            i = j + 1
            continue

        for symbol in SYMBOLS:
            if source.startswith(symbol, i):
                tokens.append(Token(TokenKind.SYMBOL, symbol, span))
                i += len(symbol)
                col += len(symbol)
                break
        else:
            raise LexError(f"illegal character {c!r}", span)

    return tokens


@dataclass
class _Block:
    col: int
    opener: str


@dataclass
class _Bracket:
    text: str


def _virtual(text, span):
    return Token(TokenKind.LAYOUT, text, span)


def resolve_layout(tokens):
    """
    Insert virtual block tokens following the offside rule.

    `let`, `do`, `of` and `where` open a block whose indentation is the
    column of the next token. A line starting at that column separates
    items, a line starting left of it closes the block. A token in column 1
    starts a new top-level declaration. `in` and closing brackets close the
    implicit blocks opened after them.
    """
    out = []
    stack = []
    pending_opener = None
    prev_line = None

    def close_block():
        stack.pop()
        out.append(_virtual("}", span))

    def innermost_indent():
        for entry in reversed(stack):
            if isinstance(entry, _Block):
                return entry.col
        return 1

    def emit(tok):
        nonlocal pending_opener
        if tok.is_keyword("in"):
            depth = len(stack) - 1
            while depth >= 0 and isinstance(stack[depth], _Block):
                if stack[depth].opener == "let":
                    while len(stack) > depth:
                        close_block()
                    break
                depth -= 1
        elif tok.is_symbol(")", "|]", "}"):
            while stack and isinstance(stack[-1], _Block):
                close_block()
            if stack:
                stack.pop()
        elif tok.is_symbol(","):
            while stack and isinstance(stack[-1], _Block):
                close_block()
        out.append(tok)
        if tok.is_symbol("(", "[|", "{"):
            stack.append(_Bracket(tok.text))
        if tok.kind is TokenKind.KEYWORD and tok.text in BLOCK_KEYWORDS:
            pending_opener = tok

    for tok in tokens:
        span = tok.span
        if pending_opener is not None:
            opener = pending_opener
            pending_opener = None
            if tok.is_symbol("{"):
                emit(tok)
                prev_line = tok.line
                continue
            if tok.col > innermost_indent() and not (tok.line != opener.line and tok.col == 1):
                stack.append(_Block(tok.col, opener.text))
                out.append(_virtual("{", span))
                emit(tok)
                prev_line = tok.line
                continue
            out.append(_virtual("{", span))
            out.append(_virtual("}", span))

        if prev_line is not None and tok.line != prev_line:
            if tok.col == 1:
                while stack:
                    if isinstance(stack[-1], _Block):
                        close_block()
                    else:
                        stack.pop()
                out.append(_virtual(";", span))
            else:
                while stack and isinstance(stack[-1], _Block) and tok.col < stack[-1].col:
                    close_block()
                if stack and isinstance(stack[-1], _Block) and tok.col == stack[-1].col:
                    out.append(_virtual(";", span))

        emit(tok)
        prev_line = tok.line

    span = tokens[-1].span if tokens else Span(1, 1)
    if pending_opener is not None:
        out.append(_virtual("{", span))
        out.append(_virtual("}", span))
    while stack:
        if isinstance(stack[-1], _Block):
            close_block()
        else:
            stack.pop()
    out.append(Token(TokenKind.EOF, "", span))
    return out


def lex(source, file="<input>"):
    return resolve_layout(tokenize(source, file))
