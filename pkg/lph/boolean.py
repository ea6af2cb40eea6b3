#!/usr/bin/env python
"""
Boolean formulas as node labels of Boolean graphs.

Label syntax: variables `[a-z][a-z0-9_]*`, the constants `true` and
`false`, `!`, `&`, `|` (tightest first) and parentheses. Formulas are held
as nnf sentences; negation is pushed down to the variables on parsing.
"""
from __future__ import annotations

import itertools
import logging
import re

from nnf import And, Or, Var

from .exceptions import Not3CNF, ParseError, ReductionError

logger = logging.getLogger(__name__)

BOOLEAN_VARIABLE = re.compile(r'[a-z][a-z0-9_]*')
BOOLEAN_TOKEN = re.compile(r'\s*(?:(?P<name>[a-z][a-z0-9_]*)|(?P<op>[!&|()]))')
AUX_PREFIX = 'aux_'

TRUE = And()
FALSE = Or()


def _conj(children):
    kept = set()
    for child in children:
        if child == FALSE:
            return FALSE
        if isinstance(child, And):
            kept.update(child.children)
        else:
            kept.add(child)
    return next(iter(kept)) if len(kept) == 1 else And(kept)


def _disj(children):
    kept = set()
    for child in children:
        if child == TRUE:
            return TRUE
        if isinstance(child, Or):
            kept.update(child.children)
        else:
            kept.add(child)
    return next(iter(kept)) if len(kept) == 1 else Or(kept)


def conjunction(*children):
    """And of the children with constants folded and nested Ands flattened."""
    return _conj(children)


def disjunction(*children):
    return _disj(children)


def negate(f):
    if isinstance(f, Var):
        return ~f
    if isinstance(f, And):
        return _disj(negate(c) for c in f.children)
    return _conj(negate(c) for c in f.children)


# Parsing

class _BooleanParser:

    def __init__(self, text):
        self.text = text
        self.pos = 0
        self.start = 0
        self.token = None
        self.advance()

    def error(self, message):
        column = self.start if self.token is not None else self.pos
        return ParseError(message, column=column + 1)

    def advance(self):
        match = BOOLEAN_TOKEN.match(self.text, self.pos)
        if match is None:
            rest = self.text[self.pos:]
            if rest.strip():
                self.pos += len(rest) - len(rest.lstrip())
                raise ParseError(f'unexpected character {rest.strip()[0]!r}', column=self.pos + 1)
            self.token = None
            self.pos = len(self.text)
            return
        self.token = match.group('name') or match.group('op')
        self.start = match.start(match.lastgroup)
        self.pos = match.end()

    def expect(self, text):
        if self.token != text:
            raise self.error(f'expected {text!r}, found {self.token or "end of input"!r}')
        self.advance()

    def disjunction(self):
        children = [self.conjunction()]
        while self.token == '|':
            self.advance()
            children.append(self.conjunction())
        return _disj(children)

    def conjunction(self):
        children = [self.negation()]
        while self.token == '&':
            self.advance()
            children.append(self.negation())
        return _conj(children)

    def negation(self):
        if self.token == '!':
            self.advance()
            return negate(self.negation())
        if self.token == '(':
            self.advance()
            inner = self.disjunction()
            self.expect(')')
            return inner
        if self.token is None or not BOOLEAN_VARIABLE.fullmatch(self.token):
            raise self.error(f'unexpected {self.token or "end of input"!r}')
        name = self.token
        self.advance()
        if name == 'true':
            return TRUE
        if name == 'false':
            return FALSE
        return Var(name)


def parse_boolean(text):
    """Parse a label; raises ParseError with the offending column."""
    parser = _BooleanParser(text)
    if parser.token is None:
        raise ParseError('empty Boolean formula')
    f = parser.disjunction()
    if parser.token is not None:
        raise parser.error(f'unexpected {parser.token!r} after the formula')
    return f


def format_boolean(f):
    """Concrete label syntax, children in a deterministic order."""
    if isinstance(f, Var):
        return f.name if f.true else f'!{f.name}'
    if f == TRUE:
        return 'true'
    if f == FALSE:
        return 'false'
    inner = Or if isinstance(f, And) else And
    symbol = '&' if isinstance(f, And) else '|'
    parts = []
    for child in f.children:
        text = format_boolean(child)
        if isinstance(child, inner) and len(child.children) > 1:
            text = f'({text})'
        parts.append(text)
    return symbol.join(sorted(parts))


def variables(f):
    return frozenset(f.vars())


# Partial evaluation

def partial_value(f, valuation):
    """True, False, or None if the partial valuation leaves f open."""
    if isinstance(f, Var):
        value = valuation.get(f.name)
        return None if value is None else value == f.true
    open_child = False
    deciding = isinstance(f, Or)
    for child in f.children:
        value = partial_value(child, valuation)
        if value is deciding:
            return deciding
        if value is None:
            open_child = True
    return None if open_child else not deciding


def models(f, fixed=None):
    """
    Every valuation of f's variables (as dicts) that satisfies f and
    agrees with `fixed` on the variables they share. Branches in sorted
    variable order and prunes as soon as f is decided.
    """
    fixed = fixed or {}
    names = sorted(variables(f))
    valuation = {name: fixed[name] for name in names if name in fixed}
    free = [name for name in names if name not in valuation]

    def extend(k):
        value = partial_value(f, valuation)
        if value is False:
            return
        if value is True:
            rest = free[k:]
            for bits in itertools.product((False, True), repeat=len(rest)):
                yield {**valuation, **dict(zip(rest, bits))}
            return
        name = free[k]
        for bit in (False, True):
            valuation[name] = bit
            yield from extend(k + 1)
        del valuation[name]

    yield from extend(0)


# CNF

def clauses_of(f):
    """
    The clauses of a CNF sentence as tuples of (variable, polarity),
    or None if f is not in CNF.
    """
    def literal(node):
        return (node.name, node.true) if isinstance(node, Var) else None

    def clause(node):
        if isinstance(node, Var):
            return (literal(node),)
        if isinstance(node, Or):
            found = tuple(literal(c) for c in node.children)
            return None if None in found else tuple(sorted(found))
        return None

    if isinstance(f, And):
        found = [clause(c) for c in f.children]
        return None if None in found else sorted(found)
    single = clause(f)
    return None if single is None else [single]


def three_cnf_clauses(f):
    """Clauses of a 3-CNF sentence; raises Not3CNF otherwise."""
    found = clauses_of(f)
    if found is None:
        raise Not3CNF(f'{format_boolean(f)} is not in conjunctive normal form')
    for clause in found:
        if len(clause) > 3:
            raise Not3CNF(f'clause with {len(clause)} literals in {format_boolean(f)}')
    return found


def format_cnf(clauses):
    """(l|l|l)&(...) with one parenthesized group per clause."""
    if not clauses:
        return 'true'
    return '&'.join(
        '(' + ('|'.join(n if p else f'!{n}' for n, p in c) or 'false') + ')'
        for c in clauses
    )


def cnf_sentence(clauses):
    return _conj(
        _disj(Var(name, polarity) for name, polarity in clause)
        for clause in clauses
    )


class _Tseytin:
    """
    Tseytin encoding with named auxiliary variables, followed by the
    split of long clauses into 3-literal ones.
    """

    def __init__(self, prefix):
        self.prefix = prefix
        self.counter = 0
        self.clauses = []
        self.cache = {}

    def fresh(self):
        name = f'{self.prefix}{self.counter}'
        self.counter += 1
        return (name, True)

    @staticmethod
    def complement(literal):
        return (literal[0], not literal[1])

    @staticmethod
    def ordered(node):
        return sorted(node.children, key=format_boolean)

    def node(self, f):
        """A literal equivalent to f under the emitted clauses."""
        if isinstance(f, Var):
            return (f.name, f.true)
        key = format_boolean(f)
        if key in self.cache:
            return self.cache[key]
        children = [self.node(c) for c in self.ordered(f)]
        if len(children) == 1:
            return children[0]

        aux = self.fresh()
        if isinstance(f, And):
            self.clauses.append([self.complement(c) for c in children] + [aux])
            for c in children:
                self.clauses.append([self.complement(aux), c])
        else:
            self.clauses.append(children + [self.complement(aux)])
            for c in children:
                self.clauses.append([self.complement(c), aux])
        self.cache[key] = aux
        return aux

    def required(self, f):
        if isinstance(f, Var):
            self.clauses.append([(f.name, f.true)])
        elif isinstance(f, And):
            for child in self.ordered(f):
                self.required(child)
        else:
            children = [self.node(c) for c in self.ordered(f)]
            if not any(self.complement(c) in children for c in children):
                self.clauses.append(children)

    def split(self, clause):
        clause = list(dict.fromkeys(clause))
        if len(clause) <= 3:
            return [clause]
        pieces = []
        link = self.fresh()
        pieces.append(clause[:2] + [link])
        for literal in clause[2:-2]:
            following = self.fresh()
            pieces.append([self.complement(link), literal, following])
            link = following
        pieces.append([self.complement(link)] + clause[-2:])
        return pieces

    def run(self, f):
        self.required(f)
        return [piece for clause in self.clauses for piece in self.split(clause)]


def to_three_cnf(f, identifier):
    """
    An equisatisfiable 3-CNF of f whose auxiliary variables are named
    aux_<identifier>_<k>; clauses of at most three literals are kept as
    they are. Returns the clause list.
    """
    clashing = sorted(v for v in variables(f) if v.startswith(AUX_PREFIX))
    if clashing:
        raise ReductionError(f'variable {clashing[0]} uses the reserved prefix {AUX_PREFIX}')
    if f == TRUE:
        return []
    if f == FALSE:
        return [()]
    encoder = _Tseytin(f'{AUX_PREFIX}{identifier}_')
    clauses = [tuple(c) for c in encoder.run(f)]
    logger.debug('3-CNF with %d clauses and %d auxiliary variables',
                  len(clauses), encoder.counter)
    return clauses
