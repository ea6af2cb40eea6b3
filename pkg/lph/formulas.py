#!/usr/bin/env python
"""
Formulas of local second-order logic.

The core constructors are the atoms Bit, Link, Eq and Rel, negation,
disjunction, unbounded first-order quantification (Exists), bounded
first-order quantification (ExistsNb, ranging over the elements linked to an
anchor) and second-order quantification (ExistsRel). Everything else
(And, Implies, Iff, the universal duals, radius-bounded quantifiers,
node-restricted quantifiers, IsNode) is sugar that `expand_sugar` rewrites
into the core. Truth constants are kept by the expansion.

All constructors are frozen dataclasses, so formulas compare and hash
structurally.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, replace

from .exceptions import ArityMismatch, FormulaSyntaxError, NotClassifiable

VARIABLE = re.compile(r'[a-z][A-Za-z0-9_]*')
RELATION_VARIABLE = re.compile(r'[A-Z][A-Za-z0-9_]*')
KEYWORDS = frozenset({'true', 'false', 'node'})
QUANTIFIER_KEYWORDS = frozenset({'E', 'A', 'EN', 'AN', 'E2', 'A2'})
INDEXED_KEYWORD = re.compile(r'(bit|link)(\d+)')


def is_variable_name(name):
    return (
        VARIABLE.fullmatch(name) is not None
        and name not in KEYWORDS
        and INDEXED_KEYWORD.fullmatch(name) is None
    )


def is_relation_name(name):
    return RELATION_VARIABLE.fullmatch(name) is not None and name not in QUANTIFIER_KEYWORDS


class Formula:
    __slots__ = ()

    def __str__(self):
        return format_formula(self)


# Atoms

@dataclass(frozen=True)
class Const(Formula):
    value: bool


@dataclass(frozen=True)
class Bit(Formula):
    index: int
    var: str


@dataclass(frozen=True)
class Link(Formula):
    index: int
    left: str
    right: str


@dataclass(frozen=True)
class Eq(Formula):
    left: str
    right: str


@dataclass(frozen=True)
class Rel(Formula):
    name: str
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, 'args', tuple(self.args))

    @property
    def arity(self):
        return len(self.args)


@dataclass(frozen=True)
class IsNode(Formula):
    """The element has no owner, i.e. it is a node and not a labeling bit."""
    var: str


ATOMS = (Const, Bit, Link, Eq, Rel, IsNode)


# Connectives

@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


BINARY = (Or, And, Implies, Iff)


# First-order quantifiers. `node=True` restricts the bound variable to nodes.

@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula
    node: bool = False


@dataclass(frozen=True)
class ForAll(Formula):
    var: str
    body: Formula
    node: bool = False


def _check_anchor(quantifier):
    if quantifier.var == quantifier.anchor:
        raise FormulaSyntaxError(
            f'bounded quantifier binds its own anchor {quantifier.var!r}'
        )


@dataclass(frozen=True)
class ExistsNb(Formula):
    var: str
    anchor: str
    body: Formula
    node: bool = False

    def __post_init__(self):
        _check_anchor(self)


@dataclass(frozen=True)
class ForAllNb(Formula):
    var: str
    anchor: str
    body: Formula
    node: bool = False

    def __post_init__(self):
        _check_anchor(self)


@dataclass(frozen=True)
class ExistsWithin(Formula):
    """Some element at distance at most `radius` from the anchor (itself included)."""
    var: str
    radius: int
    anchor: str
    body: Formula
    node: bool = False

    def __post_init__(self):
        _check_anchor(self)


@dataclass(frozen=True)
class ForAllWithin(Formula):
    var: str
    radius: int
    anchor: str
    body: Formula
    node: bool = False

    def __post_init__(self):
        _check_anchor(self)


# Second-order quantifiers

@dataclass(frozen=True)
class ExistsRel(Formula):
    name: str
    arity: int
    body: Formula


@dataclass(frozen=True)
class ForAllRel(Formula):
    name: str
    arity: int
    body: Formula


UNBOUNDED = (Exists, ForAll)
NEIGHBOR = (ExistsNb, ForAllNb)
WITHIN = (ExistsWithin, ForAllWithin)
BOUNDED = NEIGHBOR + WITHIN
FIRST_ORDER_QUANTIFIERS = UNBOUNDED + BOUNDED
SECOND_ORDER_QUANTIFIERS = (ExistsRel, ForAllRel)
EXISTENTIAL = (Exists, ExistsNb, ExistsWithin, ExistsRel)

DUAL = {
    Exists: ForAll, ForAll: Exists,
    ExistsNb: ForAllNb, ForAllNb: ExistsNb,
    ExistsWithin: ForAllWithin, ForAllWithin: ExistsWithin,
    ExistsRel: ForAllRel, ForAllRel: ExistsRel,
}


def true():
    return Const(True)


def false():
    return Const(False)


def conj(*formulas):
    """Left-nested conjunction; the empty conjunction is true."""
    formulas = [f for f in formulas if f != Const(True)]
    if not formulas:
        return Const(True)
    result = formulas[0]
    for f in formulas[1:]:
        result = And(result, f)
    return result


def disj(*formulas):
    """Left-nested disjunction; the empty disjunction is false."""
    formulas = [f for f in formulas if f != Const(False)]
    if not formulas:
        return Const(False)
    result = formulas[0]
    for f in formulas[1:]:
        result = Or(result, f)
    return result


def exists_rel(variables, body):
    """Block of existential second-order quantifiers, [(name, arity), ...]."""
    for name, arity in reversed(list(variables)):
        body = ExistsRel(name, arity, body)
    return body


def forall_rel(variables, body):
    for name, arity in reversed(list(variables)):
        body = ForAllRel(name, arity, body)
    return body


# Variables and substitution

def free_variables(f):
    """Free first-order variables of f."""
    if isinstance(f, Const):
        return frozenset()
    if isinstance(f, (Bit, IsNode)):
        return frozenset({f.var})
    if isinstance(f, (Link, Eq)):
        return frozenset({f.left, f.right})
    if isinstance(f, Rel):
        return frozenset(f.args)
    if isinstance(f, Not):
        return free_variables(f.body)
    if isinstance(f, BINARY):
        return free_variables(f.left) | free_variables(f.right)
    if isinstance(f, UNBOUNDED):
        return free_variables(f.body) - {f.var}
    if isinstance(f, BOUNDED):
        return (free_variables(f.body) - {f.var}) | {f.anchor}
    if isinstance(f, SECOND_ORDER_QUANTIFIERS):
        return free_variables(f.body)
    raise TypeError(f'not a formula: {f!r}')


def all_variables(f):
    """Every first-order variable name occurring in f, free or bound."""
    if isinstance(f, FIRST_ORDER_QUANTIFIERS):
        found = all_variables(f.body) | {f.var}
        if isinstance(f, BOUNDED):
            found |= {f.anchor}
        return found
    if isinstance(f, Not) or isinstance(f, SECOND_ORDER_QUANTIFIERS):
        return all_variables(f.body)
    if isinstance(f, BINARY):
        return all_variables(f.left) | all_variables(f.right)
    return free_variables(f)


def relation_arities(f):
    """
    Map every second-order variable name of f to its arity. Raises
    ArityMismatch when a name is used with two different arities inside
    the same scope.
    """
    found = {}

    def visit(g, scope):
        if isinstance(g, Rel):
            expected = scope.get(g.name, found.get(g.name))
            if expected is not None and expected != g.arity:
                raise ArityMismatch(
                    f'{g.name} is used with arity {g.arity}, expected {expected}'
                )
            found.setdefault(g.name, g.arity)
        elif isinstance(g, SECOND_ORDER_QUANTIFIERS):
            if g.arity < 1:
                raise ArityMismatch(f'{g.name} must have a positive arity')
            found.setdefault(g.name, g.arity)
            visit(g.body, {**scope, g.name: g.arity})
        elif isinstance(g, Not) or isinstance(g, FIRST_ORDER_QUANTIFIERS):
            visit(g.body, scope)
        elif isinstance(g, BINARY):
            visit(g.left, scope)
            visit(g.right, scope)

    visit(f, {})
    return found


def free_relations(f):
    """Free second-order variables of f, mapped to their arity."""
    if isinstance(f, Rel):
        return {f.name: f.arity}
    if isinstance(f, SECOND_ORDER_QUANTIFIERS):
        inner = free_relations(f.body)
        inner.pop(f.name, None)
        return inner
    if isinstance(f, Not) or isinstance(f, FIRST_ORDER_QUANTIFIERS):
        return free_relations(f.body)
    if isinstance(f, BINARY):
        return {**free_relations(f.left), **free_relations(f.right)}
    return {}


def fresh_variable(base, avoid):
    """A variable name derived from `base` that is not in `avoid`."""
    stem = base.rstrip('0123456789') or 'v'
    for k in itertools.count(1):
        candidate = f'{stem}{k}'
        if candidate not in avoid and is_variable_name(candidate):
            return candidate


def substitute(f, mapping):
    """
    Simultaneously replace free occurrences of the variables in `mapping`.
    Bound variables that would capture a substituted name are renamed.
    """
    mapping = {old: new for old, new in mapping.items() if old != new}
    if not mapping:
        return f
    return _substitute(f, mapping)


def _substitute(f, mapping):
    if not mapping:
        return f
    rename = lambda v: mapping.get(v, v)

    if isinstance(f, Const):
        return f
    if isinstance(f, Bit):
        return Bit(f.index, rename(f.var))
    if isinstance(f, IsNode):
        return IsNode(rename(f.var))
    if isinstance(f, Link):
        return Link(f.index, rename(f.left), rename(f.right))
    if isinstance(f, Eq):
        return Eq(rename(f.left), rename(f.right))
    if isinstance(f, Rel):
        return Rel(f.name, tuple(rename(a) for a in f.args))
    if isinstance(f, Not):
        return Not(_substitute(f.body, mapping))
    if isinstance(f, BINARY):
        return type(f)(_substitute(f.left, mapping), _substitute(f.right, mapping))
    if isinstance(f, SECOND_ORDER_QUANTIFIERS):
        return replace(f, body=_substitute(f.body, mapping))

    inner = {old: new for old, new in mapping.items() if old != f.var}
    changes = {}
    targets = set(inner.values())
    if isinstance(f, BOUNDED):
        changes['anchor'] = rename(f.anchor)
        targets.add(changes['anchor'])
    var, body = f.var, f.body
    if var in targets:
        var = fresh_variable(var, all_variables(body) | targets | set(inner) | {f.var})
        body = _substitute(body, {f.var: var})
    return replace(f, var=var, body=_substitute(body, inner), **changes)


# Sugar expansion and normal forms

def is_node_pattern(f):
    """Recognize the expanded form of IsNode(y): not exists z ~ y with z ->2 y."""
    return (
        isinstance(f, Not)
        and isinstance(f.body, ExistsNb)
        and not f.body.node
        and f.body.body == Link(2, f.body.var, f.body.anchor)
    )


def expand_sugar(f):
    """Rewrite f into core constructors only."""
    if isinstance(f, (Const, Bit, Link, Eq, Rel)):
        return f
    if isinstance(f, IsNode):
        z = fresh_variable('z', {f.var})
        return Not(ExistsNb(z, f.var, Link(2, z, f.var)))
    if isinstance(f, Not):
        return Not(expand_sugar(f.body))
    if isinstance(f, Or):
        return Or(expand_sugar(f.left), expand_sugar(f.right))
    if isinstance(f, And):
        return Not(Or(Not(expand_sugar(f.left)), Not(expand_sugar(f.right))))
    if isinstance(f, Implies):
        return Or(Not(expand_sugar(f.left)), expand_sugar(f.right))
    if isinstance(f, Iff):
        left, right = expand_sugar(f.left), expand_sugar(f.right)
        return Or(Not(Or(Not(left), Not(right))), Not(Or(left, right)))
    if isinstance(f, ExistsRel):
        return ExistsRel(f.name, f.arity, expand_sugar(f.body))
    if isinstance(f, ForAllRel):
        return Not(ExistsRel(f.name, f.arity, Not(expand_sugar(f.body))))

    existential = isinstance(f, EXISTENTIAL)
    body = f.body
    if f.node:
        body = And(IsNode(f.var), body) if existential else Implies(IsNode(f.var), body)
    body = expand_sugar(body)
    if not existential:
        body = Not(body)

    if isinstance(f, UNBOUNDED):
        core = Exists(f.var, body)
    elif isinstance(f, NEIGHBOR):
        core = ExistsNb(f.var, f.anchor, body)
    else:
        core = _unfold_within(f.var, f.radius, f.anchor, body)
    return core if existential else Not(core)


def _unfold_within(var, radius, anchor, body):
    # E<r+1> y ~ x . phi  ==  E<r> y ~ x . (phi | E y' ~ y . phi[y/y'])
    for _ in range(radius):
        primed = fresh_variable(var, all_variables(body) | {var, anchor})
        body = Or(body, ExistsNb(primed, var, substitute(body, {var: primed})))
    return substitute(body, {var: anchor})


def normalize(f):
    """Negation normal form: negations only in front of atoms."""
    return _normalize(f, True)


def _normalize(f, positive):
    if isinstance(f, Const):
        return Const(f.value == positive)
    if isinstance(f, ATOMS):
        return f if positive else Not(f)
    if isinstance(f, Not):
        return _normalize(f.body, not positive)
    if isinstance(f, (And, Or)):
        keep = type(f) if positive else (Or if isinstance(f, And) else And)
        return keep(_normalize(f.left, positive), _normalize(f.right, positive))
    if isinstance(f, Implies):
        if positive:
            return Or(_normalize(f.left, False), _normalize(f.right, True))
        return And(_normalize(f.left, True), _normalize(f.right, False))
    if isinstance(f, Iff):
        a, b = f.left, f.right
        if positive:
            return Or(
                And(_normalize(a, True), _normalize(b, True)),
                And(_normalize(a, False), _normalize(b, False)),
            )
        return Or(
            And(_normalize(a, True), _normalize(b, False)),
            And(_normalize(a, False), _normalize(b, True)),
        )
    kind = type(f) if positive else DUAL[type(f)]
    body = _normalize(f.body, positive)
    if isinstance(f, SECOND_ORDER_QUANTIFIERS):
        return kind(f.name, f.arity, body)
    if isinstance(f, UNBOUNDED):
        return kind(f.var, body, f.node)
    if isinstance(f, NEIGHBOR):
        return kind(f.var, f.anchor, body, f.node)
    return kind(f.var, f.radius, f.anchor, body, f.node)


# Fragments

FO, BFL, LFO, SIGMA, PI = 'FO', 'BFL', 'LFO', 'Sigma', 'Pi'


@dataclass(frozen=True)
class FragmentTag:
    kind: str
    level: int = 0
    monadic: bool = True

    @property
    def is_local(self):
        """In the local second-order hierarchy (LFO is Sigma(0) and Pi(0))."""
        return self.kind in (LFO, SIGMA, PI)

    def within(self, kind, level):
        """Whether the fragment is contained in Sigma(level) or Pi(level)."""
        if not self.is_local:
            return False
        if self.kind == LFO:
            return True
        if self.level < level:
            return True
        return self.level == level and self.kind == kind

    def __str__(self):
        name = self.kind if self.kind in (FO, BFL, LFO) else f'{self.kind}({self.level})'
        return f'{name}, monadic' if self.monadic else name


@dataclass(frozen=True)
class QuantifierBlock:
    existential: bool
    variables: tuple


def split_prefix(f):
    """
    Split the leading second-order quantifiers of f into blocks of equal
    polarity. Universal quantifiers are recognized both as ForAllRel and
    in expanded form.
    """
    blocks = []
    while True:
        if isinstance(f, ExistsRel):
            existential, variable, f = True, (f.name, f.arity), f.body
        elif isinstance(f, ForAllRel):
            existential, variable, f = False, (f.name, f.arity), f.body
        elif (
            isinstance(f, Not)
            and isinstance(f.body, ExistsRel)
            and isinstance(f.body.body, Not)
        ):
            existential, variable, f = False, (f.body.name, f.body.arity), f.body.body.body
        else:
            break
        if blocks and blocks[-1].existential == existential:
            blocks[-1] = QuantifierBlock(existential, blocks[-1].variables + (variable,))
        else:
            blocks.append(QuantifierBlock(existential, (variable,)))
    return tuple(blocks), f


def split_local(matrix):
    """
    Split an LFO sentence into its universally quantified variable and its
    BFL body. Node-restricted universal quantification keeps the IsNode
    guard inside the body. Raises NotClassifiable otherwise.
    """
    if isinstance(matrix, ForAll):
        var = matrix.var
        body = Implies(IsNode(var), matrix.body) if matrix.node else matrix.body
    elif (
        isinstance(matrix, Not)
        and isinstance(matrix.body, Exists)
        and not matrix.body.node
        and isinstance(matrix.body.body, Not)
    ):
        var, body = matrix.body.var, matrix.body.body.body
    else:
        raise NotClassifiable('not of the form: for all x, bounded formula')
    if not is_bounded_formula(body):
        raise NotClassifiable('unbounded quantification below the universal prefix')
    if free_variables(body) - {var}:
        raise NotClassifiable(
            f'free variables {sorted(free_variables(body) - {var})} in an LFO body'
        )
    return var, body


def is_bounded_formula(f):
    """Only bounded first-order quantification, no second-order quantifiers."""
    if isinstance(f, ATOMS):
        return True
    if isinstance(f, Not) or isinstance(f, BOUNDED):
        return is_bounded_formula(f.body)
    if isinstance(f, BINARY):
        return is_bounded_formula(f.left) and is_bounded_formula(f.right)
    return False


def is_first_order(f):
    if isinstance(f, ATOMS):
        return True
    if isinstance(f, SECOND_ORDER_QUANTIFIERS):
        return False
    if isinstance(f, BINARY):
        return is_first_order(f.left) and is_first_order(f.right)
    return is_first_order(f.body)


def classify(f):
    """Smallest fragment containing f, as a FragmentTag."""
    arities = relation_arities(f)
    monadic = all(arity == 1 for arity in arities.values())
    blocks, matrix = split_prefix(f)

    if not blocks:
        if free_variables(f) and is_bounded_formula(f):
            return FragmentTag(BFL, 0, monadic)
        try:
            split_local(f)
        except NotClassifiable:
            if is_first_order(f):
                return FragmentTag(FO, 0, monadic)
            raise NotClassifiable('second-order quantifier below a first-order one')
        return FragmentTag(LFO, 0, monadic)

    split_local(matrix)
    kind = SIGMA if blocks[0].existential else PI
    return FragmentTag(kind, len(blocks), monadic)


def nesting_radius(f):
    """
    Maximum nesting depth of bounded first-order quantifiers. IsNode, in
    sugar or expanded form, only inspects the element itself and counts as
    depth 0.
    """
    if isinstance(f, ATOMS):
        return 0
    if isinstance(f, Not):
        return 0 if is_node_pattern(f) else nesting_radius(f.body)
    if isinstance(f, BINARY):
        return max(nesting_radius(f.left), nesting_radius(f.right))
    if isinstance(f, NEIGHBOR):
        return 1 + nesting_radius(f.body)
    if isinstance(f, WITHIN):
        return f.radius + nesting_radius(f.body)
    return nesting_radius(f.body)


# Printer

_LEVEL = {Iff: 1, Implies: 2, Or: 3, And: 4}
_SYMBOL = {Iff: '<->', Implies: '->', Or: '|', And: '&'}
_UNARY_LEVEL = 5


def format_formula(f):
    """Concrete syntax accepted by lph.parser.parse_formula."""
    text, _ = _format(f)
    return text


def _wrap(f, required):
    text, level = _format(f)
    return f'({text})' if level < required else text


def _format(f):
    if isinstance(f, Const):
        return ('true' if f.value else 'false'), _UNARY_LEVEL
    if isinstance(f, Bit):
        return f'bit{f.index}({f.var})', _UNARY_LEVEL
    if isinstance(f, IsNode):
        return f'node({f.var})', _UNARY_LEVEL
    if isinstance(f, Link):
        return f'link{f.index}({f.left}, {f.right})', _UNARY_LEVEL
    if isinstance(f, Eq):
        return f'{f.left} = {f.right}', _UNARY_LEVEL
    if isinstance(f, Rel):
        return f'{f.name}({", ".join(f.args)})', _UNARY_LEVEL
    if isinstance(f, Not):
        return '!' + _wrap(f.body, _UNARY_LEVEL), _UNARY_LEVEL
    if isinstance(f, BINARY):
        level = _LEVEL[type(f)]
        # -> is right-associative, the other connectives left-associative
        left_required, right_required = (
            (level + 1, level) if isinstance(f, Implies) else (level, level + 1)
        )
        left = _wrap(f.left, left_required)
        right = _wrap(f.right, right_required)
        return f'{left} {_SYMBOL[type(f)]} {right}', level

    body = _wrap(f.body, 0)
    if isinstance(f, SECOND_ORDER_QUANTIFIERS):
        keyword = 'E2' if isinstance(f, ExistsRel) else 'A2'
        return f'{keyword} {f.name}:{f.arity} . {body}', 0
    keyword = ('E' if isinstance(f, EXISTENTIAL) else 'A') + ('N' if f.node else '')
    if isinstance(f, WITHIN):
        keyword = f'{keyword}<{f.radius}>'
    if isinstance(f, BOUNDED):
        return f'{keyword} {f.var} ~ {f.anchor} . {body}', 0
    return f'{keyword} {f.var} . {body}', 0
