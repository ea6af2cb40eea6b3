#!/usr/bin/env python
"""
Model checker for local second-order logic on finite relational structures.

First-order quantification is evaluated directly. Second-order
quantification has two exact strategies:

- ``enumerate`` tries every relation in order of increasing size (then
  lexicographically), guarded by static domain caps.
- ``branching`` evaluates the body in three-valued logic with the relation
  left open, and only splits on atoms the body actually consults (false
  first). Open atoms of an enclosing relation are handed back to the
  quantifier that owns them.

Both strategies count search steps against a budget and raise
SearchSpaceTooLarge instead of answering when it runs out.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple

from . import conf
from .exceptions import ArityMismatch, SearchSpaceTooLarge, SignatureMismatch, UnboundVariable
from .formulas import (
    BINARY, EXISTENTIAL, FIRST_ORDER_QUANTIFIERS, NEIGHBOR, SECOND_ORDER_QUANTIFIERS,
    UNBOUNDED, And, Bit, Const, Eq, ExistsRel, Iff, Implies, IsNode, Link, Not, Or,
    Rel, free_relations, free_variables, relation_arities,
)
from .structures import structural_representation

logger = logging.getLogger(__name__)

BRANCHING = 'branching'
ENUMERATE = 'enumerate'
STRATEGIES = (BRANCHING, ENUMERATE)

_MISSING = object()


@dataclass(frozen=True)
class VariableAssignment:
    """First-order variables to elements, second-order variables to relations."""
    elements: Mapping = field(default_factory=dict)
    relations: Mapping = field(default_factory=dict)

    def bind(self, var, element):
        return VariableAssignment({**self.elements, var: element}, self.relations)


class _Unknown(NamedTuple):
    relation: object
    args: tuple


class _Interpretation:
    """
    Current value of a relation variable. Complete interpretations hold a
    set of tuples; partial ones map decided tuples to booleans and leave
    the rest open.
    """
    __slots__ = ('name', 'values', 'complete')

    def __init__(self, name, values, complete):
        self.name = name
        self.values = values
        self.complete = complete

    def lookup(self, args):
        if self.complete:
            return args in self.values
        value = self.values.get(args)
        return _Unknown(self, args) if value is None else value


def _signature_needs(f):
    """Largest Bit index and Link index used by f (IsNode uses link 2)."""
    if isinstance(f, Bit):
        return f.index, 0
    if isinstance(f, Link):
        return 0, f.index
    if isinstance(f, IsNode):
        return 0, 2
    if isinstance(f, (Const, Eq, Rel)):
        return 0, 0
    if isinstance(f, BINARY):
        left, right = _signature_needs(f.left), _signature_needs(f.right)
        return max(left[0], right[0]), max(left[1], right[1])
    bits, links = _signature_needs(f.body)
    if isinstance(f, FIRST_ORDER_QUANTIFIERS) and f.node:
        links = max(links, 2)
    return bits, links


class Evaluator:
    """Evaluates formulas on one structure; reusable across formulas."""

    def __init__(self, structure, strategy=None, budget=None,
                 unary_cap=None, binary_cap=None, max_arity=None):
        self.structure = structure
        self.strategy = strategy or conf.get('LPH_SO_STRATEGY')
        if self.strategy not in STRATEGIES:
            raise ValueError(f'unknown second-order strategy {self.strategy!r}')
        self.budget = budget if budget is not None else conf.get('LPH_SO_SEARCH_BUDGET')
        self.unary_cap = unary_cap if unary_cap is not None else conf.get('LPH_SO_UNARY_DOMAIN_CAP')
        self.binary_cap = binary_cap if binary_cap is not None else conf.get('LPH_SO_BINARY_DOMAIN_CAP')
        self.max_arity = max_arity if max_arity is not None else conf.get('LPH_SO_MAX_ARITY')
        self.steps = 0
        self._node_cache = {}
        self._elements = {}
        self._relations = {}

    def check(self, f, assignment):
        bits, links = _signature_needs(f)
        unary, binary = self.structure.signature
        if bits > unary or links > binary:
            raise SignatureMismatch(
                f'formula needs signature ({bits}, {links}), structure has ({unary}, {binary})'
            )
        relation_arities(f)

        missing = free_variables(f) - set(assignment.elements)
        if missing:
            raise UnboundVariable(f'unassigned variables: {", ".join(sorted(missing))}')
        for var, element in assignment.elements.items():
            if element not in self.structure.position:
                raise UnboundVariable(f'{var} is assigned {element!r}, not an element')

        for name, arity in free_relations(f).items():
            if name not in assignment.relations:
                raise UnboundVariable(f'unassigned relation variable {name}')
            if any(len(t) != arity for t in assignment.relations[name]):
                raise ArityMismatch(f'{name} is assigned tuples of the wrong arity')

    def evaluate(self, f, assignment=None):
        assignment = assignment or VariableAssignment()
        self.check(f, assignment)
        self._elements = dict(assignment.elements)
        self._relations = {
            name: _Interpretation(name, frozenset(map(tuple, tuples)), True)
            for name, tuples in assignment.relations.items()
        }
        start = self.steps
        value = self._eval(f)
        logger.debug('evaluated %s in %d search steps', type(f).__name__, self.steps - start)
        return value

    def is_node(self, e):
        cached = self._node_cache.get(e)
        if cached is None:
            ownership = self.structure.binary[1]
            cached = not any((z, e) in ownership for z in self.structure.linked[e])
            self._node_cache[e] = cached
        return cached

    def _tick(self):
        self.steps += 1
        if self.steps > self.budget:
            raise SearchSpaceTooLarge(
                f'second-order search exceeded its budget of {self.budget} steps'
            )

    def _eval(self, f):
        s, env = self.structure, self._elements
        if isinstance(f, Const):
            return f.value
        if isinstance(f, Bit):
            return s.holds_unary(f.index, env[f.var])
        if isinstance(f, Link):
            return s.holds_binary(f.index, env[f.left], env[f.right])
        if isinstance(f, Eq):
            return env[f.left] == env[f.right]
        if isinstance(f, IsNode):
            return self.is_node(env[f.var])
        if isinstance(f, Rel):
            return self._relations[f.name].lookup(tuple(env[a] for a in f.args))
        if isinstance(f, Not):
            value = self._eval(f.body)
            return (not value) if isinstance(value, bool) else value
        if isinstance(f, Or):
            return self._or(f)
        if isinstance(f, And):
            return self._and(f)
        if isinstance(f, Implies):
            return self._implies(f)
        if isinstance(f, Iff):
            left, right = self._eval(f.left), self._eval(f.right)
            if not isinstance(left, bool):
                return left
            if not isinstance(right, bool):
                return right
            return left == right
        if isinstance(f, FIRST_ORDER_QUANTIFIERS):
            return self._quantify(f)
        if isinstance(f, SECOND_ORDER_QUANTIFIERS):
            return self._second_order(f)
        raise TypeError(f'not a formula: {f!r}')

    # Kleene connectives; an unknown result carries one open atom

    def _or(self, f):
        left = self._eval(f.left)
        if left is True:
            return True
        right = self._eval(f.right)
        if right is True:
            return True
        return right if left is False else left

    def _and(self, f):
        left = self._eval(f.left)
        if left is False:
            return False
        right = self._eval(f.right)
        if right is False:
            return False
        return right if left is True else left

    def _implies(self, f):
        left = self._eval(f.left)
        if left is False:
            return True
        right = self._eval(f.right)
        if right is True:
            return True
        return right if left is True else left

    def _range(self, f):
        s, env = self.structure, self._elements
        if isinstance(f, UNBOUNDED):
            candidates = s.domain
        elif isinstance(f, NEIGHBOR):
            candidates = s.linked[env[f.anchor]]
        else:
            candidates = s.within(env[f.anchor], f.radius)
        if f.node:
            candidates = [e for e in candidates if self.is_node(e)]
        return candidates

    def _quantify(self, f):
        existential = isinstance(f, EXISTENTIAL)
        env = self._elements
        saved = env.get(f.var, _MISSING)
        unknown = None
        try:
            for e in self._range(f):
                env[f.var] = e
                value = self._eval(f.body)
                if value is existential:
                    return value
                if unknown is None and not isinstance(value, bool):
                    unknown = value
        finally:
            if saved is _MISSING:
                env.pop(f.var, None)
            else:
                env[f.var] = saved
        return unknown if unknown is not None else not existential

    # second order

    def _second_order(self, f):
        if f.arity > self.max_arity:
            raise SearchSpaceTooLarge(
                f'relation {f.name} has arity {f.arity}, the limit is {self.max_arity}'
            )
        existential = isinstance(f, ExistsRel)
        saved = self._relations.get(f.name, _MISSING)
        try:
            if self.strategy == ENUMERATE:
                return self._enumerate(f, existential)
            interpretation = _Interpretation(f.name, {}, False)
            self._relations[f.name] = interpretation
            return self._branch(f.body, interpretation, existential)
        finally:
            if saved is _MISSING:
                self._relations.pop(f.name, None)
            else:
                self._relations[f.name] = saved

    def _branch(self, body, interpretation, existential):
        self._tick()
        value = self._eval(body)
        if isinstance(value, bool) or value.relation is not interpretation:
            return value
        atom = value.args
        for choice in (False, True):
            interpretation.values[atom] = choice
            outcome = self._branch(body, interpretation, existential)
            del interpretation.values[atom]
            if outcome is existential or not isinstance(outcome, bool):
                return outcome
        return not existential

    def _enumerate(self, f, existential):
        domain = self.structure.domain
        cap = self.unary_cap if f.arity == 1 else self.binary_cap
        if f.arity > 2 or len(domain) > cap:
            raise SearchSpaceTooLarge(
                f'enumerating {f.name}:{f.arity} over {len(domain)} elements exceeds the cap'
            )
        tuples = list(itertools.product(domain, repeat=f.arity))
        for size in range(len(tuples) + 1):
            for subset in itertools.combinations(tuples, size):
                self._tick()
                self._relations[f.name] = _Interpretation(f.name, frozenset(subset), True)
                value = self._eval(f.body)
                if value is existential:
                    return value
        return not existential


def evaluate(s, f, assignment=None, strategy=None, budget=None):
    """Truth value of f on structure s under the assignment."""
    return Evaluator(s, strategy=strategy, budget=budget).evaluate(f, assignment)


def holds_at(s, f, element, strategy=None, budget=None):
    """Evaluate a formula with one free variable at the given element."""
    free = free_variables(f)
    assignment = VariableAssignment({var: element for var in free})
    return evaluate(s, f, assignment, strategy=strategy, budget=budget)


def satisfies(g, f, strategy=None, budget=None):
    """Evaluate a sentence on the structural representation of a graph."""
    return evaluate(structural_representation(g), f, strategy=strategy, budget=budget)
