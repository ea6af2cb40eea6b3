#!/usr/bin/env python
"""
Certificate games: Eve and Adam alternately choose certificate
assignments, then a distributed arbiter decides whether every node accepts.

A game with level l and first player Eve asks whether
E g1 A g2 ... Q gl: execute(arbiter, g1#...#gl) accepts every node,
each gi ranging over the (r, p)-bounded assignments (optionally capped)
that the i-th restrictor accepts. A restrictor rejection loses the branch
for the player who chose the assignment.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Optional

from . import conf
from .exceptions import BudgetExceeded, NotLocallyUnique
from .graphs import certificate_bound, check_locally_unique, neighborhood
from .runtime import accepts, execute

logger = logging.getLogger(__name__)

EVE = 'Eve'
ADAM = 'Adam'
PLAYERS = (EVE, ADAM)


@dataclass(frozen=True)
class GameSpec:
    """
    `candidates(g, ids, v, position)` replaces the raw bit-string
    certificates of node v at a quantifier position. `view_radius` promises
    that a node's verdict is determined by the ball of that radius (the
    arbiter's running time), which allows computing verdicts locally;
    `input_radius` narrows the ball whose certificates matter.
    """
    level: int
    first_player: str = EVE
    cert_radius: int = 0
    cert_poly: tuple = (0, 1)
    cert_cap: Optional[int] = None
    restrictors: tuple = ()
    rho: int = 1
    candidates: Optional[Callable] = None
    view_radius: Optional[int] = None
    input_radius: Optional[int] = None

    def __post_init__(self):
        if self.level < 0:
            raise ValueError('level must be non-negative')
        if self.first_player not in PLAYERS:
            raise ValueError(f'first player must be one of {PLAYERS}')
        if self.restrictors and len(self.restrictors) != self.level:
            raise ValueError(
                f'{len(self.restrictors)} restrictors for a game of level {self.level}'
            )

    def player(self, position):
        """Who chooses the certificate at a 0-based quantifier position."""
        same = position % 2 == 0
        return self.first_player if same else (ADAM if self.first_player == EVE else EVE)


def bit_strings(max_length):
    """All bit strings up to the given length, shortest first."""
    for length in range(max_length + 1):
        for bits in itertools.product('01', repeat=length):
            yield ''.join(bits)


class _Game:

    def __init__(self, prog, g, ids, spec, limits, budget):
        self.prog = prog
        self.g = g
        self.ids = ids
        self.spec = spec
        self.limits = limits
        self.budget = budget if budget is not None else conf.get('LPH_GAME_BUDGET')
        self.spent = 0
        self.cache = {}

        cap = spec.cert_cap
        if cap is None and spec.candidates is None:
            cap = conf.get('LPH_GAME_CERT_CAP')
        self.options = []
        for position in range(spec.level):
            per_node = {}
            for v in g.nodes:
                bound = certificate_bound(g, ids, v, spec.cert_radius, spec.cert_poly)
                limit = bound if cap is None else min(bound, cap)
                if spec.candidates is None:
                    found = list(bit_strings(limit))
                else:
                    found = [c for c in spec.candidates(g, ids, v, position) if len(c) <= limit]
                per_node[v] = found
            self.options.append(per_node)

        self.local = spec.view_radius is not None
        if self.local:
            radius = spec.input_radius if spec.input_radius is not None else spec.view_radius
            self.balls = {v: neighborhood(g, v, spec.view_radius) for v in g.nodes}
            self.inputs = {v: tuple(g.ball(v, radius)) for v in g.nodes}

    def tick(self):
        self.spent += 1
        if self.spent > self.budget:
            raise BudgetExceeded(f'game search exceeded its budget of {self.budget} steps')

    @staticmethod
    def certificates(chosen, nodes):
        return {v: '#'.join(a.get(v, '') for a in chosen) for v in nodes}

    def assignments(self, position):
        per_node = self.options[position]
        for combination in itertools.product(*(per_node[v] for v in self.g.nodes)):
            yield dict(zip(self.g.nodes, combination))

    def allowed(self, position, chosen):
        restrictor = self.spec.restrictors[position]
        self.tick()
        result = execute(restrictor, self.g, self.ids,
                         self.certificates(chosen, self.g.nodes), self.limits)
        return accepts(result)

    def node_verdict(self, v, chosen):
        key = (v, tuple(tuple(a.get(u, '') for a in chosen) for u in self.inputs[v]))
        cached = self.cache.get(key)
        if cached is None:
            self.tick()
            ball = self.balls[v]
            ids = {u: self.ids[u] for u in ball.nodes}
            result = execute(self.prog, ball, ids, self.certificates(chosen, ball.nodes),
                             self.limits)
            cached = self.cache[key] = result.verdicts[v]
        return cached

    def accepted(self, chosen):
        if self.local:
            return all(self.node_verdict(v, chosen) for v in self.g.nodes)
        self.tick()
        result = execute(self.prog, self.g, self.ids,
                         self.certificates(chosen, self.g.nodes), self.limits)
        return accepts(result)

    def solve(self, chosen=()):
        chosen = list(chosen)
        position = len(chosen)
        if position == self.spec.level:
            return self.accepted(chosen)
        if position == self.spec.level - 1 and self.local and not self.spec.restrictors:
            return self.solve_last(chosen)

        eve = self.spec.player(position) == EVE
        for assignment in self.assignments(position):
            self.tick()
            extended = chosen + [assignment]
            if self.spec.restrictors and not self.allowed(position, extended):
                value = not eve
            else:
                value = self.solve(extended)
            if value == eve:
                return value
        return not eve

    def solve_last(self, chosen):
        position = len(chosen)
        per_node = self.options[position]

        if self.spec.player(position) == ADAM:
            # Adam wins iff some node can be made to reject, which only
            # depends on the certificates in that node's input ball.
            for v in self.g.nodes:
                ball = self.inputs[v]
                for combination in itertools.product(*(per_node[u] for u in ball)):
                    self.tick()
                    if not self.node_verdict(v, chosen + [dict(zip(ball, combination))]):
                        return False
            return True

        # Eve: backtracking in BFS order, checking each node as soon as its
        # input ball is fully assigned.
        start = self.g.nodes[0]
        distance = self.g.distances(start)
        order = sorted(self.g.nodes, key=lambda u: (distance[u], self.g.index[u]))
        rank = {u: k for k, u in enumerate(order)}
        ready = [[] for _ in order]
        for v in self.g.nodes:
            ready[max(rank[u] for u in self.inputs[v])].append(v)

        partial = {}

        def extend(k):
            if k == len(order):
                return True
            v = order[k]
            for certificate in per_node[v]:
                self.tick()
                partial[v] = certificate
                extended = chosen + [partial]
                if all(self.node_verdict(u, extended) for u in ready[k]) and extend(k + 1):
                    return True
            partial.pop(v, None)
            return False

        return extend(0)


def arbitrate(prog, g, ids, spec, limits=None, budget=None):
    """Whether Eve wins the certificate game of `spec` played on g."""
    if not check_locally_unique(g, ids, spec.rho):
        raise NotLocallyUnique(f'identifiers are not {spec.rho}-locally unique')
    game = _Game(prog, g, ids, spec, limits, budget)
    if spec.level == 0:
        return game.accepted([])
    value = game.solve()
    logger.debug('game of level %d on %d nodes decided %s after %d steps',
                 spec.level, len(g), value, game.spent)
    return value


def check_local_repairability(restrictor, g, ids, spec, budget=None, limits=None):
    """
    Brute-force check that the restrictor is locally repairable on g:
    whenever a node rejects, changing that node's last certificate alone
    can make it accept while every other verdict stays the same.
    Certificates range over the game's candidates for `spec.level`
    positions (at least one).
    """
    game = _Game(restrictor, g, ids, GameSpec(
        level=max(spec.level, 1), first_player=spec.first_player,
        cert_radius=spec.cert_radius, cert_poly=spec.cert_poly,
        cert_cap=spec.cert_cap, rho=spec.rho, candidates=spec.candidates,
    ), limits, budget)
    last = game.spec.level - 1

    def verdicts(chosen):
        game.tick()
        return execute(restrictor, g, ids, game.certificates(chosen, g.nodes), limits).verdicts

    for combination in itertools.product(*(game.assignments(p) for p in range(last + 1))):
        chosen = list(combination)
        before = verdicts(chosen)
        for u in g.nodes:
            if before[u]:
                continue
            repaired = False
            for certificate in game.options[last][u]:
                if certificate == chosen[last][u]:
                    continue
                changed = chosen[:last] + [{**chosen[last], u: certificate}]
                after = verdicts(changed)
                if after[u] and all(after[w] == before[w] for w in g.nodes if w != u):
                    repaired = True
                    break
            if not repaired:
                logger.debug('node %s cannot be repaired under %s', u, chosen)
                return False
    return True
