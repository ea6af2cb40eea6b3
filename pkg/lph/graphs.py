#!/usr/bin/env python
"""
Labeled graphs, identifier and certificate assignments, neighborhoods,
the .lg file format and small-instance enumeration.

Graphs are finite, simple, undirected and connected. Node names are opaque
strings, labels are strings (bit strings for every use except SATGRAPH
instances, whose labels are Boolean formulas).
"""
from __future__ import annotations

import itertools
import logging
import math
import random
import re
from dataclasses import dataclass
from functools import cached_property

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from .exceptions import (
    DuplicateEdge, DuplicateNode, Disconnected, EmptyGraph, LabelError,
    MissingId, ParseError, SelfLoop, Unsupported, UnknownNode,
)

logger = logging.getLogger(__name__)

BITS = re.compile(r'[01]*')
NODE_NAME = re.compile(r'[A-Za-z0-9_]+')

# networkx ships every graph with at most this many nodes
ATLAS_MAX_NODES = 7


def is_bit_string(text):
    return BITS.fullmatch(text) is not None


@dataclass(frozen=True)
class LabeledGraph:
    """
    G = (V, E, l). `edges` keeps the pairs as given so that validate_graph
    can report duplicates and self-loops; `labels` is aligned with `nodes`.
    """
    nodes: tuple
    edges: tuple
    labels: tuple

    @classmethod
    def build(cls, nodes, edges=(), labels=None):
        """
        Return a graph from node names, edge pairs and an optional
        node -> label mapping (missing labels are empty).
        """
        nodes = tuple(nodes)
        labels = labels or {}
        return cls(
            nodes=nodes,
            edges=tuple(tuple(edge) for edge in edges),
            labels=tuple(labels.get(v, '') for v in nodes),
        )

    def __len__(self):
        return len(self.nodes)

    def __contains__(self, v):
        return v in self.index

    @cached_property
    def index(self):
        return {v: position for position, v in enumerate(self.nodes)}

    @cached_property
    def labeling(self):
        return dict(zip(self.nodes, self.labels))

    @cached_property
    def edge_set(self):
        return frozenset(frozenset(edge) for edge in self.edges)

    @cached_property
    def graph(self):
        """The topology as a networkx graph (labels stored as 'label')."""
        graph = nx.Graph()
        for v, label in zip(self.nodes, self.labels):
            graph.add_node(v, label=label)
        graph.add_edges_from(self.edges)
        return graph

    @cached_property
    def _adjacency(self):
        adjacency = {v: [] for v in self.nodes}
        for u, v in self.edges:
            adjacency[u].append(v)
            adjacency[v].append(u)
        return {
            v: tuple(sorted(set(nbrs), key=self.index.__getitem__))
            for v, nbrs in adjacency.items()
        }

    def label(self, v):
        self.require(v)
        return self.labels[self.index[v]]

    def neighbors(self, v):
        """Neighbors of `v` in node order."""
        self.require(v)
        return self._adjacency[v]

    def degree(self, v):
        return len(self.neighbors(v))

    def has_edge(self, u, v):
        return frozenset((u, v)) in self.edge_set

    def require(self, v):
        if v not in self.index:
            raise UnknownNode(f'unknown node {v!r}')

    def relabel(self, labels):
        """Same topology, labels replaced by the `labels` mapping."""
        return LabeledGraph.build(self.nodes, self.edges, labels)

    def distances(self, v, cutoff=None):
        self.require(v)
        return nx.single_source_shortest_path_length(self.graph, v, cutoff=cutoff)

    def ball(self, v, r):
        """Node names at distance at most r from v, in node order."""
        reached = self.distances(v, cutoff=r)
        return tuple(u for u in self.nodes if u in reached)

    def canonical_form(self):
        """
        Name-free canonical form: the minimum, over all node orderings, of
        (labels in that order, adjacency bits). Only meant for small graphs.
        """
        n = len(self.nodes)
        best = None
        for order in itertools.permutations(range(n)):
            names = [self.nodes[i] for i in order]
            key = (
                tuple(self.labeling[v] for v in names),
                tuple(
                    self.has_edge(names[i], names[j])
                    for i in range(n) for j in range(i + 1, n)
                ),
            )
            if best is None or key < best:
                best = key
        return (n,) + best


def isomorphic(g, h):
    """True iff a name bijection maps g onto h preserving edges and labels."""
    if len(g) != len(h) or len(g.edge_set) != len(h.edge_set):
        return False
    matcher = GraphMatcher(
        g.graph, h.graph,
        node_match=lambda a, b: a['label'] == b['label'],
    )
    return matcher.is_isomorphic()


def validate_graph(g):
    """
    Raise the first violation of the graph invariants: EmptyGraph,
    DuplicateNode, UnknownNode, SelfLoop, DuplicateEdge, Disconnected.
    """
    if not g.nodes:
        raise EmptyGraph('graph has no nodes')

    seen = set()
    for v in g.nodes:
        if v in seen:
            raise DuplicateNode(f'node {v!r} declared twice')
        seen.add(v)

    edges = set()
    for u, v in g.edges:
        for endpoint in (u, v):
            if endpoint not in seen:
                raise UnknownNode(f'edge {u}-{v} uses unknown node {endpoint!r}')
        if u == v:
            raise SelfLoop(f'self-loop at node {u!r}')
        key = frozenset((u, v))
        if key in edges:
            raise DuplicateEdge(f'duplicate edge {u}-{v}')
        edges.add(key)

    reached = nx.node_connected_component(g.graph, g.nodes[0])
    if len(reached) != len(g.nodes):
        stray = next(v for v in g.nodes if v not in reached)
        raise Disconnected(
            f'node {stray!r} is not reachable from {g.nodes[0]!r}'
        )


def require_bit_labels(g):
    for v, label in zip(g.nodes, g.labels):
        if not is_bit_string(label):
            raise LabelError(f'label of node {v!r} is not a bit string: {label!r}')


def neighborhood(g, v, r):
    """The subgraph induced by the nodes at distance at most r from v."""
    kept = set(g.ball(v, r))
    return LabeledGraph.build(
        [u for u in g.nodes if u in kept],
        [(a, b) for a, b in g.edges if a in kept and b in kept],
        {u: g.labeling[u] for u in kept},
    )


# Identifiers

def id_compare(a, b):
    """
    Identifier order: a proper prefix is smaller, otherwise the first
    differing bit decides. This is exactly Python's string order on {0,1}*.
    Returns -1, 0 or 1.
    """
    return (a > b) - (a < b)


def check_locally_unique(g, ids, rho):
    """True iff distinct nodes within distance 2*rho carry distinct ids."""
    for v in g.nodes:
        if v not in ids:
            raise MissingId(f'node {v!r} has no identifier')
    for v in g.nodes:
        for u in g.ball(v, 2 * rho):
            if u != v and ids[u] == ids[v]:
                return False
    return True


def small_id_bound(g, v, rho):
    """ceil(log2 |N^{2 rho}(v)|), the length bound for small identifiers."""
    return math.ceil(math.log2(len(g.ball(v, 2 * rho))))


def _strings_up_to(length):
    for size in range(length + 1):
        for bits in itertools.product('01', repeat=size):
            yield ''.join(bits)


def generate_small_ids(g, rho, seed=0):
    """
    Greedy seeded assignment: nodes are visited in a shuffled order and
    each picks uniformly among the strings of admissible length not yet
    used within distance 2*rho. A free string always exists because
    2^(L+1) - 1 strings of length <= L outnumber the |N^{2 rho}(v)| - 1
    conflicting nodes.
    """
    rng = random.Random(seed)
    order = list(g.nodes)
    rng.shuffle(order)

    ids = {}
    for v in order:
        taken = {ids[u] for u in g.ball(v, 2 * rho) if u in ids}
        free = [s for s in _strings_up_to(small_id_bound(g, v, rho)) if s not in taken]
        ids[v] = rng.choice(free)

    logger.debug('generated ids for %d nodes (rho=%d, seed=%d)', len(g), rho, seed)
    return {v: ids[v] for v in g.nodes}


def enumerate_id_assignments(g, rho, count, seed=0, attempts=50):
    """
    Up to `count` pairwise distinct small rho-locally-unique assignments,
    drawn with consecutive seeds. Tiny graphs may admit fewer.
    """
    found = []
    for offset in range(attempts * count):
        ids = generate_small_ids(g, rho, seed + offset)
        if ids not in found:
            found.append(ids)
        if len(found) == count:
            break
    return found


# Certificates

def evaluate_polynomial(coefficients, x):
    """Coefficient list c0, c1, ... evaluated at x."""
    return sum(c * x ** power for power, c in enumerate(coefficients))


def certificate_bound(g, ids, v, r, p):
    """p evaluated at the sum over N^r(v) of 1 + |label(u)| + |id(u)|."""
    ids = ids or {}
    size = sum(
        1 + len(g.labeling[u]) + len(ids.get(u, ''))
        for u in g.ball(v, r)
    )
    return evaluate_polynomial(p, size)


def is_bounded(g, ids, certificates, r, p):
    """True iff every certificate respects the (r, p) bound."""
    return all(
        len(certificates.get(v, '')) <= certificate_bound(g, ids, v, r, p)
        for v in g.nodes
    )


def certificate_list(certificate_assignments, v):
    """The per-node list encoding c1#c2#...#cl."""
    return '#'.join(assignment.get(v, '') for assignment in certificate_assignments)


# Enumeration

def enumerate_graphs(max_nodes, label_alphabet=('',)):
    """
    Yield every connected labeled graph with at most `max_nodes` nodes and
    labels drawn from `label_alphabet`, once per isomorphism class. Shapes
    come from the networkx graph atlas; labelings are reduced modulo the
    automorphism group of the shape. Nodes are named v0, v1, ...
    """
    if max_nodes < 1:
        raise ValueError('max_nodes must be at least 1')
    if max_nodes > ATLAS_MAX_NODES:
        raise Unsupported(f'enumeration is limited to {ATLAS_MAX_NODES} nodes')

    alphabet = list(label_alphabet)
    for shape in nx.graph_atlas_g():
        n = shape.number_of_nodes()
        if n == 0 or n > max_nodes or not nx.is_connected(shape):
            continue
        automorphisms = [
            mapping for mapping in GraphMatcher(shape, shape).isomorphisms_iter()
        ]
        names = [f'v{i}' for i in range(n)]
        edges = [(names[a], names[b]) for a, b in sorted(shape.edges())]
        for labeling in itertools.product(range(len(alphabet)), repeat=n):
            canonical = min(
                tuple(labeling[mapping[i]] for i in range(n))
                for mapping in automorphisms
            )
            if canonical != labeling:
                continue
            yield LabeledGraph.build(
                names, edges, {names[i]: alphabet[labeling[i]] for i in range(n)},
            )


# The .lg format

def parse_lg(text, boolean_labels=False):
    """
    Read a graph file. Returns (graph, ids) where ids is None if no node
    declares an identifier. Labels must be bit strings unless
    `boolean_labels` is set.
    """
    nodes, edges, labels, ids = [], [], {}, {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        fields = line.split()
        keyword = fields[0]

        if keyword == 'node':
            if len(fields) < 2 or not NODE_NAME.fullmatch(fields[1]):
                raise ParseError('expected a node name', line=number)
            name = fields[1]
            for option in fields[2:]:
                key, sep, value = option.partition('=')
                if not sep or key not in ('label', 'id'):
                    raise ParseError(f'unknown node attribute {option!r}', line=number)
                if key == 'id' and not is_bit_string(value):
                    raise ParseError(f'identifier {value!r} is not a bit string', line=number)
                if key == 'label' and not boolean_labels and not is_bit_string(value):
                    raise ParseError(f'label {value!r} is not a bit string', line=number)
                (labels if key == 'label' else ids)[name] = value
            nodes.append(name)

        elif keyword == 'edge':
            if len(fields) != 3:
                raise ParseError('expected "edge <name> <name>"', line=number)
            edges.append((fields[1], fields[2]))

        else:
            raise ParseError(f'unknown directive {keyword!r}', line=number)

    graph = LabeledGraph.build(nodes, edges, labels)
    validate_graph(graph)
    return graph, (ids if ids else None)


def format_lg(g, ids=None):
    lines = []
    for v in g.nodes:
        parts = ['node', v]
        if g.labeling[v]:
            parts.append(f'label={g.labeling[v]}')
        if ids is not None and v in ids:
            parts.append(f'id={ids[v]}')
        lines.append(' '.join(parts))
    for u, v in g.edges:
        lines.append(f'edge {u} {v}')
    return '\n'.join(lines) + '\n'
