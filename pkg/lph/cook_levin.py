#!/usr/bin/env python
"""
Translating an existential local second-order sentence and a graph into an
equisatisfiable Boolean graph.

Each node gathers its ball of radius r (the nesting radius of the bounded
body) like the compiled arbiter does, then unfolds the body at its own
element and at each of its labeling bits: atoms without relation variables
are replaced by their truth value, X(e1, ..., ek) becomes the Boolean
variable naming the tuple, bounded quantifiers become disjunctions or
conjunctions over the elements in range. Elements are named through the
identifier of their owner, so adjacent nodes that mention the same element
share the variable. Relation tuples in reach are also mentioned as
tautologies so that nodes using the same tuple are linked by a path of
nodes that mention it.
"""
from __future__ import annotations

import itertools
import logging

from nnf import Var

from .boolean import FALSE, TRUE, conjunction, disjunction, format_boolean, negate, variables
from .compiler import CompiledProgram
from .evaluator import Evaluator
from .exceptions import NotClassifiable, NotLocallyUnique, NotSigma1
from .formulas import (
    EXISTENTIAL, LFO, NEIGHBOR, SIGMA, And, Bit, Const, Eq, Iff, Implies, IsNode, Link, Not, Or,
    Rel, WITHIN, classify, nesting_radius, split_local, split_prefix,
)
from .graphs import check_locally_unique
from .runtime import execute
from .structures import structural_representation

logger = logging.getLogger(__name__)


def element_name(e):
    """e<identifier>x<bit index>, index 0 for the node itself."""
    if isinstance(e, tuple):
        v, index = e
        return f'e{v[1:]}x{index}'
    return f'e{e[1:]}x0'


class _Unfolding:
    """Unfolds a bounded body over one view into an nnf sentence."""

    def __init__(self, structure, relation_index):
        self.structure = structure
        self.evaluator = Evaluator(structure)
        self.relation_index = relation_index

    def variable(self, atom, env):
        return self.tuple_variable(atom.name, [env[a] for a in atom.args])

    def tuple_variable(self, name, elements):
        args = '_'.join(element_name(e) for e in elements)
        return Var(f'r{self.relation_index[name]}_{args}')

    def candidates(self, f, env):
        if isinstance(f, NEIGHBOR):
            found = self.structure.linked[env[f.anchor]]
        else:
            found = self.structure.within(env[f.anchor], f.radius)
        if f.node:
            found = [e for e in found if self.evaluator.is_node(e)]
        return found

    def unfold(self, f, env):
        s = self.structure
        if isinstance(f, Const):
            return TRUE if f.value else FALSE
        if isinstance(f, Bit):
            return TRUE if s.holds_unary(f.index, env[f.var]) else FALSE
        if isinstance(f, Link):
            return TRUE if s.holds_binary(f.index, env[f.left], env[f.right]) else FALSE
        if isinstance(f, Eq):
            return TRUE if env[f.left] == env[f.right] else FALSE
        if isinstance(f, IsNode):
            return TRUE if self.evaluator.is_node(env[f.var]) else FALSE
        if isinstance(f, Rel):
            return self.variable(f, env)
        if isinstance(f, Not):
            return negate(self.unfold(f.body, env))
        if isinstance(f, Or):
            return disjunction(self.unfold(f.left, env), self.unfold(f.right, env))
        if isinstance(f, And):
            return conjunction(self.unfold(f.left, env), self.unfold(f.right, env))
        if isinstance(f, Implies):
            return disjunction(negate(self.unfold(f.left, env)), self.unfold(f.right, env))
        if isinstance(f, Iff):
            left, right = self.unfold(f.left, env), self.unfold(f.right, env)
            return conjunction(disjunction(negate(left), right), disjunction(left, negate(right)))
        if isinstance(f, NEIGHBOR + WITHIN):
            parts = [self.unfold(f.body, {**env, f.var: e}) for e in self.candidates(f, env)]
            combine = disjunction if isinstance(f, EXISTENTIAL) else conjunction
            return combine(*parts)
        raise NotSigma1(f'{type(f).__name__} in a bounded body')


def _around(structure, elements, radius):
    found = set()
    for e in elements:
        found.update(structure.within(e, radius))
    return [e for e in structure.domain if e in found]


class CookLevinProgram(CompiledProgram):
    """
    Outputs the node's Boolean formula instead of a verdict.

    Next to the unfolded body, the formula mentions (as `x | !x`) every
    relation tuple whose first element lies within `reach` of the node's
    elements and whose other elements lie within 2 * `reach`. Every node on
    a shortest path from a node using the tuple to the owner of its first
    element then mentions the tuple too, which ties the variable along that
    path since Boolean graph valuations only agree between neighbors.
    Polyadic relations need a view of radius 2 * `reach` for that.
    """
    name = 'cook-levin'

    def __init__(self, var, body, blocks, reach):
        arities = [arity for block in blocks for _, arity in block.variables]
        polyadic = max(arities, default=1) > 1
        super().__init__(var, body, blocks, 2 * reach if polyadic else reach)
        self.reach = reach
        flat = [name for block in blocks for name, _ in block.variables]
        self.relation_index = {name: k for k, name in enumerate(flat)}
        self.arity = {name: arity for block in blocks for name, arity in block.variables}

    @property
    def rho(self):
        """Locality radius the identifiers need."""
        return self.radius + 1

    def finish(self, view, records, own):
        structure = structural_representation(view)
        unfolding = _Unfolding(structure, self.relation_index)
        v = f'n{own}'
        elements = [v] + [(v, i) for i in range(1, len(view.labeling[v]) + 1)]
        body = conjunction(*(unfolding.unfold(self.body, {self.var: e}) for e in elements))
        used = variables(body)
        return format_boolean(conjunction(body, *(
            disjunction(x, negate(x))
            for x in self.tied(structure, elements, unfolding) if x.name not in used
        )))

    def tied(self, structure, elements, unfolding):
        near = _around(structure, elements, self.reach)
        far = _around(structure, elements, 2 * self.reach)
        for name, arity in self.arity.items():
            for first in near:
                for rest in itertools.product(far, repeat=arity - 1):
                    yield unfolding.tuple_variable(name, (first, *rest))


def cook_levin_program(f):
    """
    The translating node program of f. f must be existential with a single
    block (Sigma(1)) or have no second-order prefix at all (LFO).
    """
    try:
        tag = classify(f)
    except NotClassifiable as exc:
        raise NotSigma1(str(exc)) from exc
    if not (tag.kind == LFO or (tag.kind == SIGMA and tag.level == 1)):
        raise NotSigma1(f'{tag} is not Sigma(1)')
    blocks, matrix = split_prefix(f)
    var, body = split_local(matrix)
    return CookLevinProgram(var, body, blocks, nesting_radius(body))


def cook_levin_translate(f, g, ids, limits=None):
    """
    The Boolean graph of f on g: same nodes and edges, one formula per node.
    Satisfiable (in the SATGRAPH sense) iff the structural representation
    of g satisfies f. Needs (r + 1)-locally unique identifiers, (2r + 1) when
    a relation variable is polyadic.
    """
    program = cook_levin_program(f)
    rho = program.rho
    if not check_locally_unique(g, ids, rho):
        raise NotLocallyUnique(f'identifiers are not {rho}-locally unique')
    result = execute(program, g, ids, limits=limits)
    logger.debug('cook-levin: radius %d, view %d, %d rounds', program.reach, program.radius,
                 result.rounds)
    return g.relabel(result.outputs)
