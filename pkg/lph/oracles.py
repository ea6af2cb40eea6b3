#!/usr/bin/env python
"""
Brute-force ground truth for the graph properties the toolkit reasons
about. Every check is exact and exponential; meant for graphs of about
ten nodes at most.
"""
from __future__ import annotations

import logging
import math
import re

from .boolean import models, parse_boolean, variables
from .exceptions import ParseError, Unsupported

logger = logging.getLogger(__name__)

PROPERTY_NAME = re.compile(r'(?P<non>non)?(?:(?P<k1>\d+)colorable|colorable\(?(?P<k2>\d+)\)?|(?P<base>[a-z]+))')


def all_selected(g):
    return all(label == '1' for label in g.labels)


def eulerian(g):
    """Euler's criterion; connectivity is a graph invariant."""
    return all(g.degree(v) % 2 == 0 for v in g.nodes)


def eulerian_by_walk(g):
    """
    Search for a closed walk using every edge exactly once, trying the
    unused edges at the current node in turn.
    """
    if not g.edges:
        return True
    used = set()
    total = len(g.edge_set)
    start = g.nodes[0]

    def walk(v):
        if len(used) == total:
            return v == start
        for w in g.neighbors(v):
            edge = frozenset((v, w))
            if edge in used:
                continue
            used.add(edge)
            if walk(w):
                return True
            used.discard(edge)
        return False

    return walk(start)


def hamiltonian(g):
    """
    Backtracking over simple paths from the first node. The path is closed
    only when its second node precedes its last one in node order, so each
    cycle is found in one direction.
    """
    n = len(g)
    if n < 3:
        return False
    start = g.nodes[0]
    path = [start]
    visited = {start}

    def extend():
        v = path[-1]
        if len(path) == n:
            return g.has_edge(v, start) and g.index[path[1]] < g.index[v]
        for w in g.neighbors(v):
            if w in visited:
                continue
            path.append(w)
            visited.add(w)
            if extend():
                return True
            path.pop()
            visited.discard(w)
        return False

    return extend()


def colorable(g, k):
    """Whether a proper k-coloring exists (backtracking, BFS order)."""
    if k < 0:
        raise ValueError('k must be non-negative')
    distance = g.distances(g.nodes[0])
    order = sorted(g.nodes, key=lambda v: (distance[v], g.index[v]))
    colors = {}

    def extend(position):
        if position == len(order):
            return True
        v = order[position]
        taken = {colors[u] for u in g.neighbors(v) if u in colors}
        # the first node only needs color 0
        for color in range(min(k, 1) if position == 0 else k):
            if color in taken:
                continue
            colors[v] = color
            if extend(position + 1):
                return True
            del colors[v]
        return False

    return extend(0)


def boolean_labels(g):
    formulas = {}
    for v in g.nodes:
        try:
            formulas[v] = parse_boolean(g.labeling[v])
        except ParseError as exc:
            raise ParseError(f'label of node {v}: {exc.message}', column=exc.column) from exc
    return formulas


def satisfiable_graph(g):
    """
    SATGRAPH: each node gets its own valuation, which must satisfy its
    label and agree with every neighbor's valuation on shared variables.
    Non-adjacent nodes may disagree.
    """
    formulas = boolean_labels(g)
    names = {v: variables(f) for v, f in formulas.items()}
    distance = g.distances(g.nodes[0])
    order = sorted(g.nodes, key=lambda v: (distance[v], g.index[v]))
    chosen = {}

    def extend(position):
        if position == len(order):
            return True
        v = order[position]
        fixed = {}
        for u in g.neighbors(v):
            if u not in chosen:
                continue
            for name in names[v] & names[u]:
                value = chosen[u][name]
                if fixed.setdefault(name, value) != value:
                    return False
        for valuation in models(formulas[v], fixed):
            chosen[v] = valuation
            if extend(position + 1):
                return True
        chosen.pop(v, None)
        return False

    return extend(0)


def is_square(n):
    return math.isqrt(n) ** 2 == n


def is_prime(n):
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


BASE_PROPERTIES = {
    'allselected': all_selected,
    'eulerian': eulerian,
    'hamiltonian': hamiltonian,
    'satgraph': satisfiable_graph,
    'square': lambda g: is_square(len(g)),
    'prime': lambda g: is_prime(len(g)),
}

# properties that also have a non- form
COMPLEMENTS = ('allselected', 'eulerian', 'hamiltonian', 'colorable')


def parse_property_name(name):
    """
    Returns (negated, base, k). Accepts 'hamiltonian', 'nonhamiltonian',
    'notallselected', '3colorable', 'colorable(3)', 'colorable3' and
    their 'non' forms.
    """
    text = name.strip().lower()
    if text == 'notallselected':
        return True, 'allselected', None
    match = PROPERTY_NAME.fullmatch(text)
    if match is None:
        raise Unsupported(f'unknown property {name!r}')
    negated = match.group('non') is not None
    k = match.group('k1') or match.group('k2')
    if k is not None:
        return negated, 'colorable', int(k)
    base = match.group('base')
    if base == 'colorable':
        return negated, base, None
    if base not in BASE_PROPERTIES or (negated and base not in COMPLEMENTS):
        raise Unsupported(f'unknown property {name!r}')
    return negated, base, None


def check_property(name, g, k=None):
    """Exact verdict of the named property on g."""
    negated, base, parsed_k = parse_property_name(name)
    if base == 'colorable':
        k = parsed_k if parsed_k is not None else k
        if k is None:
            raise Unsupported('colorable needs the number of colors')
        verdict = colorable(g, k)
    else:
        verdict = BASE_PROPERTIES[base](g)
    logger.debug('%s on %d nodes: %s', name, len(g), verdict)
    return verdict != negated


PROPERTY_NAMES = (
    'allselected', 'notallselected', 'eulerian', 'noneulerian', 'hamiltonian',
    'nonhamiltonian', 'colorable(k)', 'noncolorable(k)', 'satgraph', 'square', 'prime',
)
