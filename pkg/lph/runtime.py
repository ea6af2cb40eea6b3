#!/usr/bin/env python
"""
Synchronous execution of distributed Turing machines and node programs.

Each round has three phases. Receive: the messages sent by the neighbors
in the previous round are sorted by sender identifier and written as
m1#m2#...#md# on the receiving tape. Compute: the local machine runs from
qstart until it pauses or stops. Send: the first d #-separated strings of
the sending tape go to the neighbors in ascending identifier order.

Tapes are stored as strings whose first cell is the start marker '>'.
Cells beyond the end of a string hold the blank '_'.
"""
from __future__ import annotations

import abc
import logging
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import NamedTuple, Optional

from . import conf
from .exceptions import (
    DuplicateSenderId, HeadUnderflow, InvalidTransition, MachineError, MissingId,
    NotLocallyUnique, ParseError, RoundLimitExceeded, StepLimitExceeded,
    UndefinedTransition,
)
from .graphs import check_locally_unique, id_compare

logger = logging.getLogger(__name__)

START = '>'
BLANK = '_'
SEPARATOR = '#'
ALPHABET = (START, BLANK, SEPARATOR, '0', '1')
MOVES = {'L': -1, 'S': 0, 'R': 1}

# for traces and error messages
DISPLAY = str.maketrans({START: '▷', BLANK: '␣', SEPARATOR: '⌗'})

QSTART = 'qstart'
QPAUSE = 'qpause'
QSTOP = 'qstop'
RESERVED_STATES = (QSTART, QPAUSE, QSTOP)

RECEIVING, INTERNAL, SENDING = range(3)

STATE_NAME = re.compile(r'[A-Za-z0-9_]+')


def bits_only(text):
    """Drop every symbol other than 0 and 1."""
    return ''.join(c for c in text if c in '01')


def tape_content(tape):
    """Tape string without the start marker and trailing blanks."""
    return tape[1:].rstrip(BLANK) if tape.startswith(START) else tape.rstrip(BLANK)


class Transition(NamedTuple):
    state: str
    write_internal: str
    write_sending: str
    move_receiving: str
    move_internal: str
    move_sending: str


@dataclass(frozen=True)
class DistributedMachine:
    """
    M = (Q, delta). The receiving tape is read-only, so a transition maps
    (q, r, i, s) to (q', i', s', Dr, Di, Ds).
    """
    states: frozenset
    transitions: dict = field(hash=False)

    def __post_init__(self):
        for (state, *read), action in self.transitions.items():
            where = f'{state} {" ".join(read)}'
            if state == QSTOP:
                raise InvalidTransition(f'{where}: qstop is terminal')
            for name in (state, action.state):
                if name not in self.states:
                    raise InvalidTransition(f'{where}: undeclared state {name!r}')
            symbols = list(read) + [action.write_internal, action.write_sending]
            if any(symbol not in ALPHABET for symbol in symbols):
                raise InvalidTransition(f'{where}: symbol outside the tape alphabet')
            moves = (action.move_receiving, action.move_internal, action.move_sending)
            if any(move not in MOVES for move in moves):
                raise InvalidTransition(f'{where}: moves must be L, S or R')

            r, i, s = read
            if r == START and action.move_receiving == 'L':
                raise InvalidTransition(f'{where}: receiving head moves left of the start')
            for scanned, written, move in (
                (i, action.write_internal, action.move_internal),
                (s, action.write_sending, action.move_sending),
            ):
                if (scanned == START) != (written == START):
                    raise InvalidTransition(f'{where}: start marker rewritten')
                if scanned == START and move == 'L':
                    raise InvalidTransition(f'{where}: head moves left of the start')

    def delta(self, state, symbols):
        try:
            return self.transitions[(state,) + tuple(symbols)]
        except KeyError:
            raise UndefinedTransition(
                state, tuple(symbol.translate(DISPLAY) for symbol in symbols)
            ) from None


@dataclass(frozen=True)
class TapeConfiguration:
    state: str
    tapes: tuple
    heads: tuple = (0, 0, 0)

    def scanned(self):
        return tuple(
            tape[head] if head < len(tape) else BLANK
            for tape, head in zip(self.tapes, self.heads)
        )


def _write(tape, head, symbol):
    if head >= len(tape):
        tape = tape + BLANK * (head - len(tape) + 1)
    return tape[:head] + symbol + tape[head + 1:]


def step_local(machine, cfg):
    """One application of delta: state update, two writes, three moves."""
    if cfg.state in (QPAUSE, QSTOP):
        raise MachineError(f'no computation step from {cfg.state}')
    action = machine.delta(cfg.state, cfg.scanned())

    receiving, internal, sending = cfg.tapes
    internal = _write(internal, cfg.heads[INTERNAL], action.write_internal)
    sending = _write(sending, cfg.heads[SENDING], action.write_sending)

    heads = []
    for head, move in zip(
        cfg.heads,
        (action.move_receiving, action.move_internal, action.move_sending),
    ):
        head += MOVES[move]
        if head < 0:
            raise HeadUnderflow(f'head moved left of the start in state {cfg.state}')
        heads.append(head)

    return TapeConfiguration(action.state, (receiving, internal, sending), tuple(heads))


def sort_incoming(messages):
    """
    (sender id, payload) pairs -> receiving tape content m1#...#md#,
    ordered by ascending sender identifier.
    """
    senders = [sender for sender, _ in messages]
    if len(set(senders)) != len(senders):
        raise DuplicateSenderId('two messages carry the same sender identifier')
    ordered = sorted(messages, key=cmp_to_key(lambda a, b: id_compare(a[0], b[0])))
    return ''.join(payload + SEPARATOR for _, payload in ordered)


def split_messages(sending_tape, degree):
    """The first `degree` #-separated strings of the sending tape, blanks ignored."""
    content = sending_tape[1:] if sending_tape.startswith(START) else sending_tape
    parts = content.replace(BLANK, '').split(SEPARATOR)
    parts = [bits_only(part) for part in parts]
    return (parts + [''] * degree)[:degree]


# Node programs

class NodeInput(NamedTuple):
    label: str
    identifier: str
    certificates: str

    @property
    def certificate_list(self):
        return self.certificates.split(SEPARATOR)


class Step(NamedTuple):
    state: object
    outgoing: tuple = ()
    verdict: Optional[str] = None


class NodeProgram(abc.ABC):
    """
    A host-language local algorithm driven by the same scheduler as the
    machines. `compute` is called once per round until it returns a
    verdict; afterwards the node only sends empty messages. Incoming
    messages arrive sorted by sender identifier, outgoing messages are
    addressed in the same order. Programs must be deterministic.
    """
    name = 'program'

    # optional promise on the number of rounds, used for view radii
    round_bound = None

    @abc.abstractmethod
    def compute(self, round_number, node, incoming, state):
        """Return a Step(state, outgoing, verdict)."""


# Execution

class ExecutionLimits(NamedTuple):
    max_rounds: int
    max_steps: int

    @classmethod
    def default(cls):
        return cls(conf.get('LPH_MAX_ROUNDS'), conf.get('LPH_MAX_STEPS'))


@dataclass
class NodeRecord:
    """Mutable per-node bookkeeping owned by the scheduler loop."""
    node: str
    inputs: NodeInput
    degree: int
    stopped: bool = False
    state: object = None
    internal: str = ''
    output: str = ''
    steps: list = field(default_factory=list)
    space: list = field(default_factory=list)
    input_sizes: list = field(default_factory=list)


@dataclass
class ExecutionResult:
    graph: object
    outputs: dict
    verdicts: dict
    rounds: int
    steps: dict
    space: dict
    input_sizes: dict
    trace: list = field(default_factory=list)

    def max_steps(self):
        return max((max(s, default=0) for s in self.steps.values()), default=0)


def accepts(result):
    """True iff every node accepts."""
    return all(result.verdicts.values())


class SequentialScheduler:
    """Runs phase 2 node after node, optionally in reversed order."""
    def __init__(self, reverse=False):
        self.reverse = reverse

    def map(self, work, nodes):
        ordered = list(reversed(nodes)) if self.reverse else list(nodes)
        results = {}
        for v in ordered:
            results[v] = work(v)
        return results


class ThreadPoolScheduler:
    """Runs phase 2 of all nodes concurrently; the round ends at the barrier."""
    def __init__(self, jobs=None):
        self.jobs = jobs or conf.get('LPH_JOBS')

    def map(self, work, nodes):
        with ThreadPoolExecutor(max_workers=max(1, self.jobs)) as pool:
            futures = {v: pool.submit(work, v) for v in nodes}
            return {v: futures[v].result() for v in nodes}


class _MachineRunner:
    def __init__(self, machine, limits):
        self.machine = machine
        self.limits = limits

    def start(self, record):
        i = record.inputs
        record.internal = START + i.label + SEPARATOR + i.identifier + SEPARATOR + i.certificates

    def run(self, record, round_number, incoming):
        receiving = START + incoming
        if record.stopped:
            return [''] * record.degree, 0, len(receiving) + len(record.internal)

        cfg = TapeConfiguration(QSTART, (receiving, record.internal, START))
        steps = 0
        while cfg.state not in (QPAUSE, QSTOP):
            if steps >= self.limits.max_steps:
                raise StepLimitExceeded(
                    f'node {record.node} exceeded {self.limits.max_steps} steps '
                    f'in round {round_number}'
                )
            cfg = step_local(self.machine, cfg)
            assert cfg.tapes[RECEIVING] is receiving
            steps += 1

        record.internal = cfg.tapes[INTERNAL]
        if cfg.state == QSTOP:
            record.stopped = True
            record.output = tape_content(record.internal)
        space = sum(len(tape) for tape in cfg.tapes)
        return split_messages(cfg.tapes[SENDING], record.degree), steps, space

    def input_size(self, record, incoming):
        return len(incoming) + len(tape_content(record.internal))

    def label(self, record):
        return bits_only(tape_content(record.internal))


class _ProgramRunner:
    def __init__(self, program):
        self.program = program

    def start(self, record):
        record.state = None

    def run(self, record, round_number, incoming):
        if record.stopped:
            return [''] * record.degree, 0, 0
        step = self.program.compute(round_number, record.inputs, tuple(incoming), record.state)
        record.state = step.state
        if step.verdict is not None:
            record.stopped = True
            record.output = step.verdict
        outgoing = list(step.outgoing)[:record.degree]
        outgoing += [''] * (record.degree - len(outgoing))
        return outgoing, 1, len(repr(step.state))

    def input_size(self, record, incoming):
        return sum(len(m) for m in incoming)

    def label(self, record):
        return bits_only(record.output)


def neighbor_order(g, ids, v):
    """Neighbors of v in ascending identifier order."""
    return sorted(g.neighbors(v), key=cmp_to_key(lambda a, b: id_compare(ids[a], ids[b])))


def execute(prog, g, ids, certs=None, limits=None, scheduler=None, trace=False):
    """
    Run `prog` (a DistributedMachine or a NodeProgram) on g under the
    identifier assignment `ids` and the certificate lists `certs`
    (node -> 'c1#c2#...'). Returns an ExecutionResult.
    """
    limits = limits or ExecutionLimits.default()
    scheduler = scheduler or SequentialScheduler()
    certs = certs or {}

    for v in g.nodes:
        if v not in ids:
            raise MissingId(f'node {v!r} has no identifier')
    if not check_locally_unique(g, ids, 1):
        raise NotLocallyUnique('identifiers are not 1-locally unique')

    if isinstance(prog, DistributedMachine):
        runner = _MachineRunner(prog, limits)
        as_tape = True
    else:
        runner = _ProgramRunner(prog)
        as_tape = False

    order = {v: neighbor_order(g, ids, v) for v in g.nodes}
    records = {}
    for v in g.nodes:
        records[v] = NodeRecord(
            node=v,
            inputs=NodeInput(g.labeling[v], ids[v], certs.get(v, '')),
            degree=len(order[v]),
        )
        runner.start(records[v])

    inbox = {v: [''] * len(order[v]) for v in g.nodes}
    history = []
    rounds = 0

    while not all(record.stopped for record in records.values()):
        if rounds >= limits.max_rounds:
            raise RoundLimitExceeded(f'execution did not stop within {limits.max_rounds} rounds')
        rounds += 1

        def work(v, round_number=rounds):
            record = records[v]
            if as_tape:
                incoming = sort_incoming(list(zip((ids[u] for u in order[v]), inbox[v])))
            else:
                incoming = list(inbox[v])
            size = runner.input_size(record, incoming)
            outgoing, steps, space = runner.run(record, round_number, incoming)
            return incoming, outgoing, steps, space, size

        done = scheduler.map(work, g.nodes)

        new_inbox = {v: [''] * len(order[v]) for v in g.nodes}
        for v in g.nodes:
            incoming, outgoing, steps, space, size = done[v]
            records[v].steps.append(steps)
            records[v].space.append(space)
            records[v].input_sizes.append(size)
            for target, message in zip(order[v], outgoing):
                new_inbox[target][order[target].index(v)] = message
        if trace:
            history.append({
                v: {'receiving': done[v][0], 'sending': list(done[v][1])}
                for v in g.nodes
            })
        inbox = new_inbox
        logger.debug('round %d done, %d nodes stopped', rounds,
                     sum(r.stopped for r in records.values()))

    labels = {v: runner.label(records[v]) for v in g.nodes}
    return ExecutionResult(
        graph=g.relabel(labels),
        outputs={v: records[v].output for v in g.nodes},
        verdicts={v: labels[v] == '1' for v in g.nodes},
        rounds=rounds,
        steps={v: records[v].steps for v in g.nodes},
        space={v: records[v].space for v in g.nodes},
        input_sizes={v: records[v].input_sizes for v in g.nodes},
        trace=history,
    )


# The .dtm format

def parse_dtm(text):
    """
    `state <name>` declarations and
    `trans <q> <r> <i> <s> -> <q'> <i'> <s'> <Dr> <Di> <Ds>` lines.
    qstart, qpause and qstop are always declared.
    """
    states = set(RESERVED_STATES)
    transitions = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        fields = line.split()
        if fields[0] == 'state':
            if len(fields) != 2 or not STATE_NAME.fullmatch(fields[1]):
                raise ParseError('expected "state <name>"', line=number)
            states.add(fields[1])
        elif fields[0] == 'trans':
            if len(fields) != 12 or fields[5] != '->':
                raise ParseError(
                    'expected "trans q r i s -> q\' i\' s\' Dr Di Ds"', line=number
                )
            key = tuple(fields[1:5])
            if key in transitions:
                raise ParseError(f'transition {" ".join(key)} defined twice', line=number)
            transitions[key] = Transition(*fields[6:12])
        else:
            raise ParseError(f'unknown directive {fields[0]!r}', line=number)

    try:
        return DistributedMachine(frozenset(states), transitions)
    except InvalidTransition as exc:
        raise ParseError(str(exc)) from exc


def display(tape):
    """Tape contents with the display symbols for start, blank and separator."""
    return tape.translate(DISPLAY)
