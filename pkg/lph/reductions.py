#!/usr/bin/env python
"""
Local reductions: node programs whose outputs describe clusters of a new
graph, the cluster-map check, the concrete reductions and the simulation
of a decider through a reduction.

A node program performing a reduction ends with a JSON cluster
description as its output:

    {"nodes": [[tag, label], ...],
     "edges": [[tag, tag], ...],
     "links": [[tag, neighbor identifier, neighbor tag], ...]}

`links` are the edges to the clusters of neighbors, named by the
neighbor's identifier. A topology-preserving reduction outputs
{"label": ...} instead, which keeps the node and its edges. Output nodes
are named <input node>__<tag>.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import Mapping, Optional

from .boolean import (
    format_cnf, parse_boolean, three_cnf_clauses, to_three_cnf, variables,
)
from .compiler import encode_number, encode_string
from .exceptions import ReductionError, Unsupported, UnknownNode
from .graphs import LabeledGraph, validate_graph
from .programs import ACCEPT, verdict
from .runtime import DistributedMachine, NodeInput, NodeProgram, Step, accepts, execute

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClusterGraph:
    output: LabeledGraph
    cluster_map: Mapping

    def cluster(self, v):
        """Output nodes mapped to the input node v, in output order."""
        return tuple(o for o in self.output.nodes if self.cluster_map[o] == v)


def validate_cluster_map(cg, g):
    """
    True iff every output edge stays inside a cluster or joins the
    clusters of adjacent input nodes.
    """
    for o in cg.output.nodes:
        if o not in cg.cluster_map:
            raise UnknownNode(f'output node {o!r} has no cluster')
        g.require(cg.cluster_map[o])
    for a, b in cg.output.edges:
        u, v = cg.cluster_map[a], cg.cluster_map[b]
        if u != v and not g.has_edge(u, v):
            logger.debug('edge %s-%s joins the clusters of %s and %s', a, b, u, v)
            return False
    return True


def output_name(v, tag):
    return f'{v}__{tag}' if tag else v


def neighbor_tag(identifier):
    return f'i{identifier}'


def _normalize(description, label, neighbor_ids):
    """Cluster description with relabelings spelled out as one-node clusters."""
    if 'nodes' in description:
        return description
    return {
        'nodes': [['', description.get('label', label)]],
        'edges': [],
        'links': [['', w, ''] for w in neighbor_ids],
    }


def _neighbor_by_id(g, ids, v):
    found = {}
    for u in g.neighbors(v):
        if ids[u] in found:
            raise ReductionError(f'two neighbors of {v!r} share the identifier {ids[u]!r}')
        found[ids[u]] = u
    return found


def assemble_clusters(g, ids, outputs):
    """Build the ClusterGraph from every node's cluster description."""
    descriptions = {}
    for v in g.nodes:
        try:
            raw = json.loads(outputs[v])
        except (TypeError, ValueError) as exc:
            raise ReductionError(f'node {v!r} did not output a cluster description') from exc
        if not isinstance(raw, dict):
            raise ReductionError(f'node {v!r} did not output a cluster description')
        if any(tag == '' for tag, _ in raw.get('nodes', ())):
            raise ReductionError(f'the empty tag is reserved for relabelings (node {v!r})')
        descriptions[v] = _normalize(raw, g.labeling[v], [ids[u] for u in g.neighbors(v)])

    nodes, labels, cluster_map = [], {}, {}
    for v in g.nodes:
        for tag, label in descriptions[v]['nodes']:
            name = output_name(v, tag)
            if name in cluster_map:
                raise ReductionError(f'tag {tag!r} repeated in the cluster of {v!r}')
            nodes.append(name)
            labels[name] = label
            cluster_map[name] = v

    edges, seen = [], set()

    def add(a, b):
        key = frozenset((a, b))
        if a != b and key not in seen:
            seen.add(key)
            edges.append((a, b))

    for v in g.nodes:
        by_id = _neighbor_by_id(g, ids, v)
        for a, b in descriptions[v]['edges']:
            add(output_name(v, a), output_name(v, b))
        for tag, identifier, remote in descriptions[v]['links']:
            u = by_id.get(identifier)
            if u is None:
                raise ReductionError(f'node {v!r} links to unknown neighbor id {identifier!r}')
            target = output_name(u, remote)
            if target not in cluster_map:
                raise ReductionError(f'node {v!r} links to missing node {target!r}')
            add(output_name(v, tag), target)

    output = LabeledGraph.build(nodes, edges, labels)
    return ClusterGraph(output, cluster_map)


def derive_output_ids(cg, ids):
    """
    Identifiers for the output graph: a node kept as is keeps its
    identifier, a cluster member gets the code of its owner's identifier
    followed by the code of its position in the cluster. Distinct input
    identifiers stay distinct, so local and global uniqueness carry over.
    """
    derived = {}
    positions = {}
    for o in cg.output.nodes:
        v = cg.cluster_map[o]
        k = positions.get(v, 0)
        positions[v] = k + 1
        derived[o] = ids[v] if o == v else encode_string(ids[v]) + encode_number(k)
    return derived


def format_cluster_map(cg):
    return ''.join(f'cluster {o} {cg.cluster_map[o]}\n' for o in cg.output.nodes)


# Reduction programs

class ClusterProgram(NodeProgram):
    """
    Round 1 sends (identifier, label) to every neighbor; round 2 calls
    `cluster` with the neighbors' records in identifier order and outputs
    the description.
    """
    round_bound = 2

    def compute(self, round_number, node, incoming, state):
        if round_number == 1:
            message = json.dumps({'id': node.identifier, 'label': node.label})
            return Step(None, tuple(message for _ in incoming))
        neighbors = [json.loads(message) for message in incoming]
        description = self.cluster(node, neighbors)
        return Step(None, (), json.dumps(description, sort_keys=True))

    def cluster(self, node, neighbors):
        raise NotImplementedError


class IdentityReduction(NodeProgram):
    name = 'identity'
    round_bound = 1

    def compute(self, round_number, node, incoming, state):
        return Step(None, (), json.dumps({'label': node.label}))


class AllSelectedToEulerian(ClusterProgram):
    """
    Two copies per node, all four edges between the copies of adjacent
    nodes, and an edge between the own copies iff the label is not 1.
    A single node becomes one node if selected and an edge otherwise.
    """
    name = 'allselected-to-eulerian'

    def cluster(self, node, neighbors):
        selected = node.label == '1'
        if not neighbors:
            if selected:
                return {'nodes': [['c0', '']], 'edges': [], 'links': []}
            return {'nodes': [['c0', ''], ['c1', '']], 'edges': [['c0', 'c1']], 'links': []}
        return {
            'nodes': [['c0', ''], ['c1', '']],
            'edges': [] if selected else [['c0', 'c1']],
            'links': [
                [mine, w['id'], theirs]
                for w in neighbors for mine in ('c0', 'c1') for theirs in ('c0', 'c1')
            ],
        }


def _port_cycle(prefix, node, neighbors, extra):
    """
    A cycle through to/from ports per neighbor (in identifier order)
    followed by the `extra` tags; returns (tags, edges, links).
    """
    own = neighbor_tag(node.identifier)
    tags = []
    links = []
    for w in neighbors:
        to_tag = f'{prefix}to_{neighbor_tag(w["id"])}'
        from_tag = f'{prefix}from_{neighbor_tag(w["id"])}'
        tags += [to_tag, from_tag]
        links += [
            [to_tag, w['id'], f'{prefix}from_{own}'],
            [from_tag, w['id'], f'{prefix}to_{own}'],
        ]
    tags += extra
    edges = [[tags[k], tags[(k + 1) % len(tags)]] for k in range(len(tags))]
    return tags, edges, links


class AllSelectedToHamiltonian(ClusterProgram):
    """
    A cycle of length max(3, 2d) with to/from ports per neighbor, port
    edges across every input edge, and a pendant node 'bad' iff the label
    is not 1.
    """
    name = 'allselected-to-hamiltonian'

    def cluster(self, node, neighbors):
        dummies = {0: ['dummy0', 'dummy1', 'dummy2'], 1: ['dummy0']}.get(len(neighbors), [])
        tags, edges, links = _port_cycle('', node, neighbors, dummies)
        if node.label != '1':
            tags = tags + ['bad']
            edges = edges + [[tags[0], 'bad']]
        return {'nodes': [[t, ''] for t in tags], 'edges': edges, 'links': links}


class NotAllSelectedToHamiltonian(ClusterProgram):
    """
    A top and a bottom cycle of length 2d + 3 each, ending in down1..3
    and up1..3 respectively. down2-up2 is always an edge, down1-up1 only
    when the label is not 1.
    """
    name = 'notallselected-to-hamiltonian'

    def cluster(self, node, neighbors):
        top, top_edges, top_links = _port_cycle(
            'top_', node, neighbors, ['top_down1', 'top_down2', 'top_down3'])
        bottom, bottom_edges, bottom_links = _port_cycle(
            'bot_', node, neighbors, ['bot_up1', 'bot_up2', 'bot_up3'])
        edges = top_edges + bottom_edges + [['top_down2', 'bot_up2']]
        if node.label != '1':
            edges.append(['top_down1', 'bot_up1'])
        return {
            'nodes': [[t, ''] for t in top + bottom],
            'edges': edges,
            'links': top_links + bottom_links,
        }


class SatGraphTo3SatGraph(NodeProgram):
    """Each label becomes an equisatisfiable 3-CNF; no communication."""
    name = 'satgraph-to-3satgraph'
    round_bound = 1

    def compute(self, round_number, node, incoming, state):
        clauses = to_three_cnf(parse_boolean(node.label), node.identifier)
        return Step(None, (), json.dumps({'label': format_cnf(clauses)}))


CLAUSE_EDGES = (
    ('c1', 'c2'), ('c1', 'c3'), ('c2', 'c3'),
    ('c3', 'c4'), ('c4', 'c5'), ('c4', 'c6'), ('c5', 'c6'),
)
LITERAL_SLOTS = ('c1', 'c2', 'c5')


def literal_tag(name, positive):
    return f'x_{name}' if positive else f'n_{name}'


def formula_gadget(clauses):
    """
    3-coloring gadget of a 3-CNF: nodes 'false' and 'ground', a literal
    pair per variable attached to ground, and per clause two triangles
    whose last node is attached to false and ground. Returns (tags, edges).
    """
    names = sorted({name for clause in clauses for name, _ in clause})
    tags = ['false', 'ground']
    edges = [['false', 'ground']]
    for name in names:
        positive, negative = literal_tag(name, True), literal_tag(name, False)
        tags += [positive, negative]
        edges += [[positive, negative], [positive, 'ground'], [negative, 'ground']]
    for j, clause in enumerate(clauses):
        slots = [literal_tag(name, positive) for name, positive in clause] or ['false']
        slots = (slots * 3)[:3]
        node = {c: f'k{j}_{c}' for c in ('c1', 'c2', 'c3', 'c4', 'c5', 'c6')}
        tags += list(node.values())
        edges += [[node[a], node[b]] for a, b in CLAUSE_EDGES]
        edges += [[literal, node[c]] for literal, c in zip(slots, LITERAL_SLOTS)]
        edges += [[node['c6'], 'false'], [node['c6'], 'ground']]
    return tags, edges


class ThreeSatGraphToThreeColorable(ClusterProgram):
    """
    Formula gadget per node; a connector gadget (two middle nodes, one per
    cluster, forming K4 minus the endpoint edge) joins false, ground and
    the positive literal of every shared variable across each input edge.
    """
    name = '3satgraph-to-3colorable'

    def cluster(self, node, neighbors):
        clauses = three_cnf_clauses(parse_boolean(node.label))
        tags, edges = formula_gadget(clauses)
        mine = {name for clause in clauses for name, _ in clause}
        own = neighbor_tag(node.identifier)
        links = []
        for w in neighbors:
            theirs = variables(parse_boolean(w['label']))
            joined = ['false', 'ground'] + [literal_tag(n, True) for n in sorted(mine & theirs)]
            for endpoint in joined:
                middle = f'join_{endpoint}_{neighbor_tag(w["id"])}'
                tags.append(middle)
                edges.append([middle, endpoint])
                links += [
                    [middle, w['id'], endpoint],
                    [middle, w['id'], f'join_{endpoint}_{own}'],
                ]
        return {'nodes': [[t, ''] for t in tags], 'edges': edges, 'links': links}


@dataclass(frozen=True)
class Reduction:
    """A named reduction from `source` to `target` performed by `program`."""
    name: str
    program: NodeProgram
    source: Optional[str] = None
    target: Optional[str] = None
    boolean_input: bool = False


REDUCTIONS = {
    reduction.name: reduction for reduction in (
        Reduction('identity', IdentityReduction()),
        Reduction('as2euler', AllSelectedToEulerian(), 'allselected', 'eulerian'),
        Reduction('as2ham', AllSelectedToHamiltonian(), 'allselected', 'hamiltonian'),
        Reduction('nas2ham', NotAllSelectedToHamiltonian(), 'notallselected', 'hamiltonian'),
        Reduction('sat23sat', SatGraphTo3SatGraph(), 'satgraph', 'satgraph', True),
        Reduction('3sat23col', ThreeSatGraphToThreeColorable(), 'satgraph', '3colorable', True),
    )
}


def get_reduction(name):
    try:
        return REDUCTIONS[name]
    except KeyError:
        raise Unsupported(f'unknown reduction {name!r}; known: {", ".join(REDUCTIONS)}')


def run_reduction(program, g, ids, limits=None, scheduler=None):
    """Execute a reduction program and assemble its output graph."""
    result = execute(program, g, ids, limits=limits, scheduler=scheduler)
    cg = assemble_clusters(g, ids, result.outputs)
    validate_graph(cg.output)
    logger.debug('%s: %d nodes -> %d nodes in %d rounds', program.name, len(g),
                 len(cg.output), result.rounds)
    return cg


def reduce_allselected_to_eulerian(g, ids, limits=None):
    return run_reduction(AllSelectedToEulerian(), g, ids, limits)


def reduce_allselected_to_hamiltonian(g, ids, limits=None):
    return run_reduction(AllSelectedToHamiltonian(), g, ids, limits)


def reduce_notallselected_to_hamiltonian(g, ids, limits=None):
    return run_reduction(NotAllSelectedToHamiltonian(), g, ids, limits)


def reduce_satgraph_to_3satgraph(bg, ids, limits=None):
    """The relabeled Boolean graph (same nodes and edges)."""
    return run_reduction(SatGraphTo3SatGraph(), bg, ids, limits).output


def reduce_3satgraph_to_3colorable(bg, ids, limits=None):
    return run_reduction(ThreeSatGraphToThreeColorable(), bg, ids, limits)


# Simulation through a reduction

class ClusterSimulation(NodeProgram):
    """
    Runs `reduction` for its declared number of rounds, exchanges the
    cluster descriptions with the neighbors in the next round, then
    simulates `target` on the own cluster, one target round per round.
    Messages between clusters travel as bundles of
    [sender tag, receiver tag, message]. A node accepts iff every node
    of its cluster accepts.
    """
    name = 'cluster-simulation'

    def __init__(self, reduction, target):
        if reduction.round_bound is None:
            raise Unsupported(f'{reduction.name} declares no round bound')
        if isinstance(target, DistributedMachine) or not isinstance(target, NodeProgram):
            raise Unsupported('only node programs can be simulated through a reduction')
        self.reduction = reduction
        self.target = target
        self.name = f'{target.name}-through-{reduction.name}'

    def compute(self, round_number, node, incoming, state):
        bound = self.reduction.round_bound
        if round_number <= bound:
            return self._reduce(round_number, node, incoming, state or {})
        if round_number == bound + 1:
            return self._announce(node, incoming, state)
        if round_number == bound + 2:
            self._setup(node, incoming, state)
        return self._simulate(round_number - bound - 1, incoming, state)

    def _reduce(self, round_number, node, incoming, state):
        if 'description' in state:
            return Step(state, ())
        step = self.reduction.compute(round_number, node, incoming, state.get('inner'))
        state = {'inner': step.state}
        if step.verdict is not None:
            state['description'] = step.verdict
        return Step(state, step.outgoing)

    def _announce(self, node, incoming, state):
        if 'description' not in state:
            raise ReductionError(
                f'{self.reduction.name} did not finish within {self.reduction.round_bound} rounds'
            )
        message = json.dumps({'id': node.identifier, 'cluster': json.loads(state['description'])},
                             sort_keys=True)
        state['own'] = json.loads(message)
        if not state['own']['cluster'].get('nodes', True):
            return Step(state, tuple(message for _ in incoming), ACCEPT)
        return Step(state, tuple(message for _ in incoming))

    def _setup(self, node, incoming, state):
        received = [json.loads(message) for message in incoming]
        neighbor_ids = [r['id'] for r in received]
        tags = {r['id']: [t for t, _ in _normalize(r['cluster'], '', [])['nodes']] for r in received}
        own = _normalize(state['own']['cluster'], node.label, neighbor_ids)
        tags[node.identifier] = [t for t, _ in own['nodes']]

        def derived(identifier, tag):
            if tag == '':
                return identifier
            return encode_string(identifier) + encode_number(tags[identifier].index(tag))

        members = {
            tag: {
                'input': NodeInput(label, derived(node.identifier, tag), ''),
                'neighbors': [],
                'state': None,
                'verdict': None,
            }
            for tag, label in own['nodes']
        }
        for a, b in own['edges']:
            members[a]['neighbors'].append((node.identifier, b, derived(node.identifier, b)))
            members[b]['neighbors'].append((node.identifier, a, derived(node.identifier, a)))
        for tag, identifier, remote in own['links']:
            members[tag]['neighbors'].append((identifier, remote, derived(identifier, remote)))
        for member in members.values():
            # the target sees its neighbors in identifier order
            member['neighbors'].sort(key=lambda entry: entry[2])

        state['members'] = members
        state['inbox'] = {}
        state['slot'] = {identifier: k for k, identifier in enumerate(neighbor_ids)}

    def _simulate(self, target_round, incoming, state):
        own_id = state['own']['id']
        members = state['members']
        inbox = state['inbox']
        if target_round > 1:
            for message in filter(None, incoming):
                bundle = json.loads(message)
                for sender, receiver, payload in bundle['messages']:
                    inbox[(bundle['from'], sender, receiver)] = payload

        bundles = [[] for _ in state['slot']]
        delivered = {}
        for tag, member in members.items():
            if member['verdict'] is not None:
                continue
            messages = tuple(
                inbox.get((identifier, remote, tag), '')
                for identifier, remote, _ in member['neighbors']
            )
            step = self.target.compute(target_round, member['input'], messages, member['state'])
            member['state'] = step.state
            if step.verdict is not None:
                member['verdict'] = step.verdict == ACCEPT
            for (identifier, remote, _), payload in zip(member['neighbors'], step.outgoing):
                if not payload:
                    continue
                if identifier == own_id:
                    delivered[(own_id, tag, remote)] = payload
                else:
                    bundles[state['slot'][identifier]].append([tag, remote, payload])

        state['inbox'] = delivered
        outgoing = tuple(
            json.dumps({'from': own_id, 'messages': bundle}) if bundle else ''
            for bundle in bundles
        )
        if all(member['verdict'] is not None for member in members.values()):
            flag = all(member['verdict'] for member in members.values())
            return Step(state, outgoing, verdict(flag))
        return Step(state, outgoing)


def simulate_through_reduction(target, reduction, g, ids, limits=None, scheduler=None):
    """
    Decide the source property of `reduction` by simulating `target` on
    the clusters: every node accepts iff its whole cluster accepts.
    """
    program = reduction.program if isinstance(reduction, Reduction) else reduction
    result = execute(ClusterSimulation(program, target), g, ids, limits=limits,
                     scheduler=scheduler)
    return accepts(result)


def run_target_on_output(target, cg, ids, limits=None):
    """Run `target` directly on the output graph under the derived ids."""
    return accepts(execute(target, cg.output, derive_output_ids(cg, ids), limits=limits))
