#!/usr/bin/env python
"""
Compiling local second-order sentences into distributed arbiters.

For a sentence Q1 X1 ... Ql Xl . A x . phi(x) with phi bounded and of
nesting radius r, the arbiter floods (identifier, label, certificates,
neighbor identifiers) records for r + 2 rounds, rebuilds the ball N^r(v),
decodes the relation fragments carried by the certificates of that ball
and evaluates phi at v's node element and at each of its labeling bits.

Certificate i of a node encodes the values of the i-th quantifier block on
the tuples whose first element the node owns:

- unary relations: one membership bit per own element (the node, then its
  labeling bits in order);
- binary relations: a list of entries (own element index, identifier of
  the target's owner, target element index), each field self-delimiting,
  the list closed by the section marker.

Targets are resolved to the node of that identifier within distance 2r of
the owner, so identifiers must be max(1, r + 1)-locally unique, and
max(1, r + 1, 2r)-locally unique once a binary relation is quantified.
"""
from __future__ import annotations

import itertools
import json
import logging
from dataclasses import dataclass

from . import conf
from .evaluator import Evaluator, VariableAssignment, satisfies
from .exceptions import BudgetExceeded, NotClassifiable, Unsupported
from .formulas import classify, nesting_radius, split_local, split_prefix
from .games import ADAM, EVE, GameSpec, arbitrate
from .graphs import LabeledGraph, generate_small_ids
from .programs import verdict
from .runtime import NodeProgram, Step
from .structures import structural_representation

logger = logging.getLogger(__name__)

TERMINATOR = '01'
SECTION_END = '10'


# Self-delimiting codes

def encode_string(bits):
    """Every bit doubled, then the terminator."""
    return ''.join(b + b for b in bits) + TERMINATOR


def encode_number(n):
    return encode_string(format(n, 'b'))


def _read_string(code, pos):
    bits = []
    while pos + 2 <= len(code):
        pair = code[pos:pos + 2]
        pos += 2
        if pair == TERMINATOR:
            return ''.join(bits), pos
        if pair[0] != pair[1]:
            return None, pos
        bits.append(pair[0])
    return None, pos


@dataclass(frozen=True)
class Fragment:
    """
    One node's share of a quantifier block: `unary[k]` holds one
    membership bit string per unary variable, `binary[k]` a frozenset of
    (own index, target identifier, target index) entries per binary one.
    """
    unary: tuple = ()
    binary: tuple = ()


def encode_fragment(fragment):
    parts = list(fragment.unary)
    for entries in fragment.binary:
        for own, target_id, target in sorted(entries):
            parts.append(encode_number(own) + encode_string(target_id) + encode_number(target))
        parts.append(SECTION_END)
    return ''.join(parts)


def decode_fragment(code, unary_count, binary_count, width):
    """
    Decode leniently: missing membership bits are 0 and a malformed entry
    list ends where the damage starts, so every bit string is a fragment.
    """
    unary = []
    pos = 0
    for _ in range(unary_count):
        unary.append(code[pos:pos + width].ljust(width, '0'))
        pos += width

    binary = []
    for _ in range(binary_count):
        entries = set()
        while pos < len(code):
            if code[pos:pos + 2] == SECTION_END:
                pos += 2
                break
            own, pos = _read_string(code, pos)
            target_id, pos = _read_string(code, pos) if own is not None else (None, pos)
            target, pos = _read_string(code, pos) if target_id is not None else (None, pos)
            if target is None or own == '' or target == '':
                pos = len(code)
                break
            entries.add((int(own, 2), target_id, int(target, 2)))
        binary.append(frozenset(entries))
    return Fragment(tuple(unary), tuple(binary))


def _split_block(variables):
    unary = [name for name, arity in variables if arity == 1]
    binary = [name for name, arity in variables if arity == 2]
    return unary, binary


def _subsets(items):
    """Subsets by increasing size, then lexicographically."""
    for size in range(len(items) + 1):
        yield from itertools.combinations(items, size)


class FragmentCandidates:
    """Every well-formed fragment of a node, usable as GameSpec.candidates."""

    def __init__(self, blocks, radius):
        self.blocks = blocks
        self.radius = radius

    def __call__(self, g, ids, v, position):
        unary, binary = _split_block(self.blocks[position].variables)
        width = 1 + len(g.labeling[v])
        memberships = [
            ''.join('1' if k in chosen else '0' for k in range(width * len(unary)))
            for chosen in _subsets(range(width * len(unary)))
        ]
        targets = [
            (ids[w], index)
            for w in g.ball(v, 2 * self.radius)
            for index in range(1 + len(g.labeling[w]))
        ]
        pairs = [(own, target_id, index) for own in range(width) for target_id, index in targets]
        relations = [list(_subsets(pairs)) for _ in binary]

        for bits in memberships:
            unary_part = tuple(bits[k * width:(k + 1) * width] for k in range(len(unary)))
            for choice in itertools.product(*relations):
                yield encode_fragment(Fragment(unary_part, tuple(frozenset(c) for c in choice)))


# The arbiter

class CompiledProgram(NodeProgram):
    name = 'compiled'

    def __init__(self, var, body, blocks, radius):
        self.var = var
        self.body = body
        self.blocks = blocks
        self.radius = radius
        self.round_bound = 1 if radius == 0 else radius + 2

    def compute(self, round_number, node, incoming, state):
        if self.radius == 0:
            view = LabeledGraph.build([f'n{node.identifier}'], (),
                                      {f'n{node.identifier}': node.label})
            records = {node.identifier: {'label': node.label, 'certs': node.certificates}}
            return Step(None, (), self.finish(view, records, node.identifier))

        known = state or {
            node.identifier: {'label': node.label, 'certs': node.certificates, 'nbrs': None},
        }
        senders = []
        for message in incoming:
            if not message:
                continue
            received = json.loads(message)
            senders.extend(received)
            for identifier, record in received.items():
                if identifier not in known or known[identifier]['nbrs'] is None:
                    known[identifier] = record
        if round_number == 2:
            known[node.identifier]['nbrs'] = sorted(senders)

        if round_number == self.round_bound:
            view = self.view(known, node.identifier)
            return Step(known, (), self.finish(view, known, node.identifier))
        message = json.dumps(known, sort_keys=True)
        return Step(known, tuple(message for _ in incoming))

    def finish(self, view, records, own):
        """The node's output once the ball around it is known."""
        return verdict(self.evaluate(view, records, own))

    def view(self, known, own):
        """The ball of radius r around `own`, nodes named n<identifier>."""
        depth = {own: 0}
        frontier = [own]
        while frontier:
            following = []
            for identifier in frontier:
                if depth[identifier] == self.radius:
                    continue
                for neighbor in known[identifier]['nbrs'] or ():
                    if neighbor not in depth and neighbor in known:
                        depth[neighbor] = depth[identifier] + 1
                        following.append(neighbor)
            frontier = following
        edges = {
            tuple(sorted((f'n{a}', f'n{b}')))
            for a in depth for b in known[a].get('nbrs') or () if b in depth
        }
        members = sorted(depth)
        return LabeledGraph.build(
            [f'n{i}' for i in members], sorted(edges),
            {f'n{i}': known[i]['label'] for i in members},
        )

    def relations(self, view, records):
        structure_names = {v: v[1:] for v in view.nodes}
        by_id = {identifier: v for v, identifier in structure_names.items()}
        relations = {
            name: set() for block in self.blocks for name, _ in block.variables
        }

        def element(v, index):
            return v if index == 0 else (v, index)

        for v in view.nodes:
            width = 1 + len(view.labeling[v])
            parts = records[structure_names[v]]['certs'].split('#')
            distances = None
            for position, block in enumerate(self.blocks):
                unary, binary = _split_block(block.variables)
                code = parts[position] if position < len(parts) else ''
                fragment = decode_fragment(code, len(unary), len(binary), width)
                for name, bits in zip(unary, fragment.unary):
                    relations[name].update(
                        (element(v, k),) for k, bit in enumerate(bits) if bit == '1'
                    )
                for name, entries in zip(binary, fragment.binary):
                    if distances is None:
                        distances = view.distances(v, cutoff=2 * self.radius)
                    for own, target_id, index in entries:
                        w = by_id.get(target_id)
                        if own >= width or w is None or w not in distances:
                            continue
                        if index > len(view.labeling[w]):
                            continue
                        relations[name].add((element(v, own), element(w, index)))
        return {name: frozenset(tuples) for name, tuples in relations.items()}

    def evaluate(self, view, records, own):
        structure = structural_representation(view)
        relations = self.relations(view, records)
        evaluator = Evaluator(structure)
        v = f'n{own}'
        elements = [v] + [(v, i) for i in range(1, len(view.labeling[v]) + 1)]
        return all(
            evaluator.evaluate(self.body, VariableAssignment({self.var: e}, relations))
            for e in elements
        )


@dataclass(frozen=True)
class CompiledArbiter:
    program: CompiledProgram
    radius: int
    blocks: tuple
    spec: GameSpec
    tag: object


def _prefix_and_body(f):
    tag = classify(f)
    if not tag.is_local:
        raise NotClassifiable(f'{tag} is outside the local second-order hierarchy')
    blocks, matrix = split_prefix(f)
    var, body = split_local(matrix)
    return tag, blocks, var, body


def required_rho(f):
    """Identifier uniqueness radius the compiled arbiter of f relies on."""
    _, blocks, _, body = _prefix_and_body(f)
    r = nesting_radius(body)
    binary = any(arity >= 2 for block in blocks for _, arity in block.variables)
    return max(1, r + 1, 2 * r if binary else 0)


def compile_formula_to_arbiter(f):
    tag, blocks, var, body = _prefix_and_body(f)
    for block in blocks:
        for name, arity in block.variables:
            if arity > 2:
                raise Unsupported(f'{name} has arity {arity}; certificates encode arity 1 and 2')
    r = nesting_radius(body)
    program = CompiledProgram(var, body, blocks, r)

    unary_total = max((len(_split_block(b.variables)[0]) for b in blocks), default=0)
    binary_total = max((len(_split_block(b.variables)[1]) for b in blocks), default=0)
    spec = GameSpec(
        level=len(blocks),
        first_player=EVE if not blocks or blocks[0].existential else ADAM,
        cert_radius=2 * r,
        cert_poly=(0, unary_total + 2 * binary_total, 0, 14 * binary_total),
        rho=required_rho(f),
        candidates=FragmentCandidates(blocks, r),
        view_radius=program.round_bound,
        input_radius=r,
    )
    logger.debug('compiled %s: radius %d, %d rounds, rho %d', tag, r,
                 program.round_bound, spec.rho)
    return CompiledArbiter(program, r, blocks, spec, tag)


def decide_via_formula(g, f, ids=None, budget=None, seed=None):
    """
    Decide f on g by playing the compiled game; falls back to direct
    evaluation when the game exceeds its budget.
    """
    arbiter = compile_formula_to_arbiter(f)
    if ids is None:
        seed = conf.get('LPH_DEFAULT_SEED') if seed is None else seed
        ids = generate_small_ids(g, arbiter.spec.rho, seed)
    try:
        return arbitrate(arbiter.program, g, ids, arbiter.spec, budget=budget)
    except BudgetExceeded as exc:
        logger.warning('%s; evaluating the formula directly', exc)
        return satisfies(g, f)
