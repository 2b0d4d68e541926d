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
from dataclasses import dataclass

from pydpq.diagnostics import Span


class TokenKind(enum.Enum):
    KEYWORD = "keyword"
    IDENT = "identifier"
    CONID = "constructor-identifier"
    NAT = "natural-literal"
    STRING = "string"
    SYMBOL = "symbol"
    LAYOUT = "layout"
    EOF = "eof"


KEYWORDS = frozenset([
    "data", "simple", "object", "gate", "class", "instance", "where",
    "case", "of", "let", "in", "do", "forall",
    "Type", "Unit", "Circ",
    "adjoint", "render",
])

# Keywords that open a layout block.
BLOCK_KEYWORDS = frozenset(["let", "do", "of", "where"])

# Longest match first.
SYMBOLS = (
    "[|", "|]", "->", "=>", "<-", "&&", "||",
    "(", ")", ",", ":", "=", "|", "*", "!", "\\", "λ", "{", "}", ";",
)


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    span: Span

    @property
    def line(self):
        return self.span.line

    @property
    def col(self):
        return self.span.col

    def is_symbol(self, *texts):
        return self.kind is TokenKind.SYMBOL and self.text in texts

    def is_keyword(self, *texts):
        return self.kind is TokenKind.KEYWORD and self.text in texts

    def is_layout(self, *texts):
        return self.kind is TokenKind.LAYOUT and self.text in texts

    def opens_block(self):
        """
        `{` written by the programmer or inserted by the layout pass.
        """
        return self.text == "{" and self.kind in (TokenKind.SYMBOL, TokenKind.LAYOUT)

    def separates(self):
        return self.text == ";" and self.kind in (TokenKind.SYMBOL, TokenKind.LAYOUT)

    def closes_block(self):
        return self.text == "}" and self.kind in (TokenKind.SYMBOL, TokenKind.LAYOUT)

    def __str__(self):
        if self.kind is TokenKind.LAYOUT:
            return f"layout '{self.text}'"
        if self.kind is TokenKind.EOF:
            return "end of input"
        return f"'{self.text}'"
