#!/usr/bin/env python
"""
Parser for the concrete formula syntax (.lso files).

Precedence, tightest first: ! & | -> <->. `->` associates to the right,
the other binary connectives to the left. Quantifier bodies extend as far
right as possible. `#` starts a comment that runs to the end of the line.
"""
from __future__ import annotations

import re
from typing import NamedTuple

from .exceptions import FormulaSyntaxError
from .formulas import (
    INDEXED_KEYWORD, QUANTIFIER_KEYWORDS, And, Bit, Const, Eq, Exists, ExistsNb,
    ExistsRel, ExistsWithin, ForAll, ForAllNb, ForAllRel, ForAllWithin, Iff,
    Implies, IsNode, Link, Not, Or, Rel, is_relation_name, is_variable_name,
    relation_arities,
)

TOKEN = re.compile(r'''
    (?P<space>[ \t\r]+|\#[^\n]*)
  | (?P<newline>\n)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<op><->|->|[!&|().,~:=<>])
''', re.VERBOSE)


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    column: int


def tokenize(text):
    tokens, line, line_start, pos = [], 1, 0, 0
    while pos < len(text):
        match = TOKEN.match(text, pos)
        if match is None:
            raise FormulaSyntaxError(
                f'unexpected character {text[pos]!r}', line, pos - line_start + 1
            )
        kind = match.lastgroup
        if kind == 'newline':
            line, line_start = line + 1, match.end()
        elif kind != 'space':
            tokens.append(Token(kind, match.group(), line, pos - line_start + 1))
        pos = match.end()
    tokens.append(Token('end', '', line, pos - line_start + 1))
    return tokens


class _Parser:

    def __init__(self, text):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self):
        return self.tokens[self.pos]

    def error(self, message, token=None):
        token = token or self.current
        return FormulaSyntaxError(message, token.line, token.column)

    def advance(self):
        token = self.current
        self.pos += 1
        return token

    def accept(self, text):
        if self.current.text == text and self.current.kind in ('op', 'ident'):
            return self.advance()
        return None

    def expect(self, text):
        token = self.accept(text)
        if token is None:
            found = self.current.text or 'end of input'
            raise self.error(f'expected {text!r}, found {found!r}')
        return token

    def variable(self):
        token = self.current
        if token.kind != 'ident' or not is_variable_name(token.text):
            raise self.error(f'expected a variable, found {token.text or "end of input"!r}')
        return self.advance().text

    def relation_name(self):
        token = self.current
        if token.kind != 'ident' or not is_relation_name(token.text):
            raise self.error(
                f'expected a relation variable, found {token.text or "end of input"!r}'
            )
        return self.advance().text

    def integer(self):
        token = self.current
        if token.kind != 'int':
            raise self.error(f'expected an integer, found {token.text or "end of input"!r}')
        return int(self.advance().text)

    # grammar

    def formula(self):
        left = self.implication()
        while self.accept('<->'):
            left = Iff(left, self.implication())
        return left

    def implication(self):
        left = self.disjunction()
        if self.accept('->'):
            return Implies(left, self.implication())
        return left

    def disjunction(self):
        left = self.conjunction()
        while self.accept('|'):
            left = Or(left, self.conjunction())
        return left

    def conjunction(self):
        left = self.unary()
        while self.accept('&'):
            left = And(left, self.unary())
        return left

    def unary(self):
        if self.accept('!'):
            return Not(self.unary())
        if self.current.kind == 'ident' and self.current.text in QUANTIFIER_KEYWORDS:
            return self.quantifier()
        return self.primary()

    def quantifier(self):
        keyword = self.advance().text
        if keyword in ('E2', 'A2'):
            name = self.relation_name()
            self.expect(':')
            arity_token = self.current
            arity = self.integer()
            if arity < 1:
                raise self.error('relation arity must be positive', arity_token)
            self.expect('.')
            kind = ExistsRel if keyword == 'E2' else ForAllRel
            return kind(name, arity, self.formula())

        existential = keyword.startswith('E')
        node = keyword.endswith('N')
        radius = None
        if self.accept('<'):
            radius = self.integer()
            self.expect('>')
        var = self.variable()
        anchor = None
        if self.accept('~'):
            anchor_token = self.current
            anchor = self.variable()
            if anchor == var:
                raise self.error(
                    f'bounded quantifier binds its own anchor {var!r}', anchor_token
                )
        elif radius is not None:
            raise self.error("a radius needs an anchor: expected '~'")
        self.expect('.')
        body = self.formula()

        if radius is not None:
            kind = ExistsWithin if existential else ForAllWithin
            return kind(var, radius, anchor, body, node)
        if anchor is not None:
            kind = ExistsNb if existential else ForAllNb
            return kind(var, anchor, body, node)
        kind = Exists if existential else ForAll
        return kind(var, body, node)

    def primary(self):
        token = self.current
        if self.accept('('):
            inner = self.formula()
            self.expect(')')
            return inner
        if token.kind != 'ident':
            raise self.error(f'unexpected {token.text or "end of input"!r}')
        if token.text in ('true', 'false'):
            self.advance()
            return Const(token.text == 'true')
        if token.text == 'node':
            self.advance()
            self.expect('(')
            var = self.variable()
            self.expect(')')
            return IsNode(var)

        indexed = INDEXED_KEYWORD.fullmatch(token.text)
        if indexed:
            self.advance()
            index = int(indexed.group(2))
            if index < 1:
                raise self.error('relation indices start at 1', token)
            self.expect('(')
            first = self.variable()
            if indexed.group(1) == 'bit':
                self.expect(')')
                return Bit(index, first)
            self.expect(',')
            second = self.variable()
            self.expect(')')
            return Link(index, first, second)

        if is_relation_name(token.text):
            name = self.advance().text
            self.expect('(')
            args = [self.variable()]
            while self.accept(','):
                args.append(self.variable())
            self.expect(')')
            return Rel(name, tuple(args))

        left = self.variable()
        self.expect('=')
        return Eq(left, self.variable())


def parse_formula(text):
    """Parse a formula; raises FormulaSyntaxError or ArityMismatch."""
    parser = _Parser(text)
    result = parser.formula()
    if parser.current.kind != 'end':
        raise parser.error(f'unexpected {parser.current.text!r} after the formula')
    relation_arities(result)
    return result


def load_formula(path):
    with open(path, encoding='utf-8') as handle:
        return parse_formula(handle.read())
