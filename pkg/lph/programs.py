#!/usr/bin/env python
"""
Reference node programs: small deciders and certificate restrictors used
by the commands, the game engine and the tests.

Verdict strings follow the machine convention: '1' accepts, anything
else rejects.
"""
from __future__ import annotations

import json
from functools import partial

from .exceptions import Unsupported
from .graphs import LabeledGraph
from .oracles import check_property, parse_property_name
from .runtime import NodeProgram, Step

ACCEPT = '1'
REJECT = '0'


def verdict(flag):
    return ACCEPT if flag else REJECT


class ConstantProgram(NodeProgram):
    """Every node outputs the same verdict in round 1."""
    name = 'constant'
    round_bound = 1

    def __init__(self, accept=True):
        self.accept = accept

    def compute(self, round_number, node, incoming, state):
        return Step(None, (), verdict(self.accept))


class AllSelectedDecider(NodeProgram):
    """Accept iff the own label is exactly 1."""
    name = 'allselected'
    round_bound = 1

    def compute(self, round_number, node, incoming, state):
        return Step(None, (), verdict(node.label == '1'))


class NeighborhoodSelectedProgram(NodeProgram):
    """
    Round 1 sends the own label to every neighbor. Round 2 accepts iff the
    own label and every received label are 1.
    """
    name = 'neighborhood-selected'
    round_bound = 2

    def compute(self, round_number, node, incoming, state):
        if round_number == 1:
            return Step(None, tuple(node.label for _ in incoming))
        flag = node.label == '1' and all(message == '1' for message in incoming)
        return Step(None, (), verdict(flag))


class EvenDegreeDecider(NodeProgram):
    """Eulerian decider: the round-1 receiving tape reveals the degree."""
    name = 'eulerian'
    round_bound = 1

    def compute(self, round_number, node, incoming, state):
        return Step(None, (), verdict(len(incoming) % 2 == 0))


class EmptyCertificateDecider(NodeProgram):
    """Accept iff every certificate in the own list is empty."""
    name = 'empty-certificates'
    round_bound = 1

    def compute(self, round_number, node, incoming, state):
        return Step(None, (), verdict(node.certificates.replace('#', '') == ''))


class CertificateEqualsLabel(NodeProgram):
    """Restrictor: the last certificate must equal the own label."""
    name = 'certificate-equals-label'
    round_bound = 1

    def compute(self, round_number, node, incoming, state):
        return Step(None, (), verdict(node.certificate_list[-1] == node.label))


class IdenticalCertificates(NodeProgram):
    """Restrictor: the last certificate must equal every neighbor's."""
    name = 'identical-certificates'
    round_bound = 2

    def compute(self, round_number, node, incoming, state):
        mine = node.certificate_list[-1]
        if round_number == 1:
            return Step(None, tuple(mine for _ in incoming))
        return Step(None, (), verdict(all(message == mine for message in incoming)))


class GlobalPropertyDecider(NodeProgram):
    """
    Floods (identifier, label, neighbor identifiers) records until the
    known part of the graph is closed, then applies `check` to the
    reconstructed graph. Nodes are named by identifier, so identifiers
    must be globally unique.
    """
    name = 'global'

    def __init__(self, check, name=None):
        self.check = check
        if name:
            self.name = name

    def compute(self, round_number, node, incoming, state):
        known = state or {node.identifier: {'label': node.label, 'nbrs': None}}

        senders = []
        for message in incoming:
            if not message:
                continue
            records = json.loads(message)
            senders.append(records['self'])
            for identifier, record in records['known'].items():
                if known.get(identifier, {}).get('nbrs') is None:
                    known[identifier] = record
        if (round_number > 1 or not incoming) and known[node.identifier]["nbrs"] is None:
            known[node.identifier] = {'label': node.label, 'nbrs': sorted(senders)}

        message = json.dumps({'self': node.identifier, 'known': known}, sort_keys=True)
        outgoing = tuple(message for _ in incoming)

        closed = all(
            record['nbrs'] is not None and all(u in known for u in record['nbrs'])
            for record in known.values()
        )
        if not closed:
            return Step(known, outgoing)

        graph = LabeledGraph.build(
            [f'n{i}' for i in sorted(known)],
            sorted({
                tuple(sorted((f"n{i}", f"n{j}")))
                for i, record in known.items() for j in record["nbrs"]
            }),
            {f'n{i}': record['label'] for i, record in known.items()},
        )
        return Step(known, outgoing, verdict(self.check(graph)))


PROGRAMS = {
    program.name: program for program in (
        ConstantProgram(True), AllSelectedDecider(), NeighborhoodSelectedProgram(),
        EvenDegreeDecider(), EmptyCertificateDecider(), CertificateEqualsLabel(),
        IdenticalCertificates(),
    )
}
GLOBAL_PREFIX = 'global:'


def get_program(name):
    """
    A reference program by name. `global:<property>` gathers the graph and
    applies the oracle of that property.
    """
    if name.startswith(GLOBAL_PREFIX):
        property_name = name[len(GLOBAL_PREFIX):]
        parse_property_name(property_name)
        return GlobalPropertyDecider(partial(check_property, property_name), name)
    try:
        return PROGRAMS[name]
    except KeyError:
        known = ', '.join(sorted(PROGRAMS))
        raise Unsupported(f'unknown program {name!r}; known: {known}, {GLOBAL_PREFIX}<property>')
