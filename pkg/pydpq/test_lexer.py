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

import unittest

from pydpq.diagnostics import LexError
from pydpq.lexer import lex, tokenize
from pydpq.tokens import TokenKind


class TestLexer(unittest.TestCase):

    def test_token_kinds(self):
        tokens = tokenize("add n (S m) : Nat")
        self.assertEqual([t.kind for t in tokens],
                         [TokenKind.IDENT, TokenKind.IDENT, TokenKind.SYMBOL, TokenKind.CONID, TokenKind.IDENT,
                          TokenKind.SYMBOL, TokenKind.SYMBOL, TokenKind.CONID])

    def test_keywords_and_primes(self):
        tokens = tokenize("let x' = Init0 () in x'")
        self.assertTrue(tokens[0].is_keyword("let"))
        self.assertEqual(tokens[1].text, "x'")
        self.assertTrue(tokens[6].is_keyword("in"))

    def test_longest_symbol_match(self):
        texts = [t.text for t in tokenize("[| f a |] -> => <- && ||")]
        self.assertEqual(texts, ["[|", "f", "a", "|]", "->", "=>", "<-", "&&", "||"])

    def test_string_literal(self):
        tokens = tokenize('render RDag box dot "R*"')
        self.assertEqual(tokens[-1].kind, TokenKind.STRING)
        self.assertEqual(tokens[-1].text, "R*")

    def test_comments_are_skipped(self):
        tokens = tokenize("x -- a comment\ny")
        self.assertEqual([t.text for t in tokens], ["x", "y"])
        self.assertEqual(tokens[1].line, 2)

    def test_spans(self):
        tokens = tokenize("f x =\n  H x", "bell.dpq")
        self.assertEqual((tokens[3].line, tokens[3].col), (2, 3))
        self.assertEqual(str(tokens[3].span), "bell.dpq:2:3")

    def test_illegal_character(self):
        with self.assertRaises(LexError) as cm:
            tokenize("a # b")
        self.assertEqual(cm.exception.span.col, 3)

    def test_malformed_number(self):
        with self.assertRaises(LexError):
            tokenize("3x")

    def test_unterminated_string(self):
        with self.assertRaises(LexError):
            tokenize('render H box "H')


class TestLayout(unittest.TestCase):

    def layout_tokens(self, source):
        return [t.text for t in lex(source) if t.kind is TokenKind.LAYOUT]

    def test_let_block(self):
        source = "f x =\n  let a = 1\n      b = 2\n  in a\n"
        self.assertEqual(self.layout_tokens(source), ["{", ";", "}"])

    def test_in_closes_block_on_same_line(self):
        self.assertEqual(self.layout_tokens("f = let a = 1 in a"), ["{", "}"])

    def test_top_level_declarations_are_separated(self):
        source = "object Qubit\nobject Bit\n"
        self.assertEqual(self.layout_tokens(source), [";"])

    def test_nested_blocks_close_together(self):
        source = "f n =\n  case n of\n    Z -> let a = 1 in a\n    S k -> k\ng = 1\n"
        self.assertEqual(self.layout_tokens(source), ["{", "{", "}", ";", "}", ";"])

    def test_closing_bracket_closes_block(self):
        self.assertEqual(self.layout_tokens("f = (do x)"), ["{", "}"])

    def test_explicit_braces(self):
        self.assertEqual(self.layout_tokens("f = let { a = 1; b = 2 } in a"), [])

    def test_ends_with_eof(self):
        self.assertEqual(lex("x")[-1].kind, TokenKind.EOF)


if __name__ == '__main__':
    unittest.main()
