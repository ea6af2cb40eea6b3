#!/usr/bin/env python
"""
Relational structures and the structural representation S(G) of a
labeled graph.

S(G) has signature (1, 2): one element per node and one per labeling bit
(node, i) with 1-based i; P1 holds the bits of value 1; link 1 holds the
edges in both directions plus the bit-successor pairs; link 2 links each
node to each of its bits.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .graphs import neighborhood, require_bit_labels


@dataclass(frozen=True)
class RelationalStructure:
    domain: tuple
    unary: tuple
    binary: tuple

    @property
    def signature(self):
        return len(self.unary), len(self.binary)

    def __len__(self):
        return len(self.domain)

    @cached_property
    def position(self):
        return {e: i for i, e in enumerate(self.domain)}

    @cached_property
    def linked(self):
        """
        e <-> e' : linked in either direction by some binary relation.
        Neighbors are listed in domain order, an element is never its own
        neighbor.
        """
        neighbors = {e: set() for e in self.domain}
        for relation in self.binary:
            for a, b in relation:
                if a != b:
                    neighbors[a].add(b)
                    neighbors[b].add(a)
        return {
            e: tuple(sorted(found, key=self.position.__getitem__))
            for e, found in neighbors.items()
        }

    def holds_unary(self, index, e):
        return e in self.unary[index - 1]

    def holds_binary(self, index, a, b):
        return (a, b) in self.binary[index - 1]

    def within(self, e, radius):
        """Elements at <->-distance at most `radius` from e, in domain order."""
        seen = {e: 0}
        queue = deque([e])
        while queue:
            current = queue.popleft()
            if seen[current] == radius:
                continue
            for nxt in self.linked[current]:
                if nxt not in seen:
                    seen[nxt] = seen[current] + 1
                    queue.append(nxt)
        return tuple(x for x in self.domain if x in seen)


def bit_elements(g, v):
    return tuple((v, i) for i in range(1, len(g.labeling[v]) + 1))


def structural_representation(g):
    require_bit_labels(g)
    domain, ones, successor, ownership = [], set(), set(), set()

    for v in g.nodes:
        domain.append(v)
        bits = bit_elements(g, v)
        domain.extend(bits)
        for (owner, i), value in zip(bits, g.labeling[v]):
            ownership.add((v, (owner, i)))
            if value == '1':
                ones.add((owner, i))
        for first, second in zip(bits, bits[1:]):
            successor.add((first, second))

    for u, v in g.edges:
        successor.add((u, v))
        successor.add((v, u))

    return RelationalStructure(
        domain=tuple(domain),
        unary=(frozenset(ones),),
        binary=(frozenset(successor), frozenset(ownership)),
    )


def structural_neighborhood(g, v, r):
    return structural_representation(neighborhood(g, v, r))


def structural_degree(s):
    """Largest number of <->-neighbors of any element."""
    return max((len(nbrs) for nbrs in s.linked.values()), default=0)


def owner(element):
    """The node owning an element of S(G) (a node owns itself)."""
    return element[0] if isinstance(element, tuple) else element
