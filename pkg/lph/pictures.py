#!/usr/bin/env python
"""
Pictures (matrices of k-bit strings), tiling systems, and the bridges
between pictures and graphs.

Pixels are addressed (row, column), both 1-based. In the structure of a
picture, link 1 holds the vertical successors (top to bottom) and link 2
the horizontal ones (left to right); P_j holds the pixels whose j-th bit
is 1.
"""
from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass

from .exceptions import BitWidthMismatch, NonZeroBits, ParseError, SignatureMismatch, Unsupported
from .formulas import (
    NEIGHBOR, WITHIN, And, Bit, Const, Eq, Exists, ExistsNb, ExistsRel, ExistsWithin, ForAll,
    ForAllNb, ForAllRel, ForAllWithin, Iff, Implies, IsNode, Link, Not, Or, Rel, all_variables,
    classify, conj, disj, exists_rel, fresh_variable,
)
from .graphs import LabeledGraph, is_bit_string
from .structures import RelationalStructure

logger = logging.getLogger(__name__)

BOUNDARY = 'B'
EMPTY_CELL = '.'
STATE_NAME = re.compile(r'[A-Za-z0-9_]+')
VERTICAL, HORIZONTAL = 1, 2


@dataclass(frozen=True)
class Picture:
    bits: int
    cells: tuple

    def __post_init__(self):
        cells = tuple(tuple(row) for row in self.cells)
        object.__setattr__(self, 'cells', cells)
        if self.bits < 0:
            raise ValueError('the number of bits must be non-negative')
        if not cells or not cells[0]:
            raise ValueError('a picture has at least one row and one column')
        if any(len(row) != len(cells[0]) for row in cells):
            raise ValueError('rows of different widths')
        for row in cells:
            for cell in row:
                if len(cell) != self.bits or not is_bit_string(cell):
                    raise BitWidthMismatch(f'cell {cell!r} is not a {self.bits}-bit string')

    @classmethod
    def blank(cls, height, width):
        """The 0-bit picture of the given size."""
        return cls(0, tuple(('',) * width for _ in range(height)))

    @property
    def height(self):
        return len(self.cells)

    @property
    def width(self):
        return len(self.cells[0])

    @property
    def size(self):
        return self.height, self.width

    def pixels(self):
        return [(i, j) for i in range(1, self.height + 1) for j in range(1, self.width + 1)]

    def cell(self, i, j):
        return self.cells[i - 1][j - 1]


def picture_structure(p):
    domain = tuple(p.pixels())
    vertical = frozenset(((i, j), (i + 1, j)) for i, j in domain if i < p.height)
    horizontal = frozenset(((i, j), (i, j + 1)) for i, j in domain if j < p.width)
    unary = tuple(
        frozenset(e for e in domain if p.cell(*e)[k] == '1') for k in range(p.bits)
    )
    return RelationalStructure(domain=domain, unary=unary, binary=(vertical, horizontal))


def enumerate_pictures(max_rows, max_cols, bits=0):
    """Every picture up to the given size, smaller sizes first."""
    values = [''.join(b) for b in itertools.product('01', repeat=bits)]
    for height in range(1, max_rows + 1):
        for width in range(1, max_cols + 1):
            for cells in itertools.product(values, repeat=height * width):
                yield Picture(bits, tuple(
                    cells[row * width:(row + 1) * width] for row in range(height)
                ))


# Tiling systems

@dataclass(frozen=True)
class TilingSystem:
    """
    Tiles are (top-left, top-right, bottom-left, bottom-right) entries,
    each BOUNDARY or a (bits, state) pair.
    """
    bits: int
    states: frozenset
    tiles: frozenset

    def __post_init__(self):
        object.__setattr__(self, 'states', frozenset(self.states))
        object.__setattr__(self, 'tiles', frozenset(tuple(t) for t in self.tiles))
        for tile in self.tiles:
            if len(tile) != 4:
                raise ValueError(f'tile {tile!r} does not have four entries')
            for entry in tile:
                if entry == BOUNDARY:
                    continue
                cell, state = entry
                if len(cell) != self.bits or not is_bit_string(cell):
                    raise BitWidthMismatch(f'tile entry {cell!r} is not a {self.bits}-bit string')
                if state not in self.states:
                    raise ValueError(f'unknown state {state!r} in a tile')


def ts_accepts(t, p):
    """
    Whether some state assignment makes every 2x2 block of the framed
    picture a tile. Pixels are filled in row-major order and each block is
    checked as soon as its last pixel is placed.
    """
    if t.bits != p.bits:
        raise BitWidthMismatch(f'tiling system over {t.bits} bits, picture over {p.bits}')
    height, width = p.size
    states = sorted(t.states)
    assigned = {}

    def entry(a, b):
        if a in (0, height + 1) or b in (0, width + 1):
            return BOUNDARY
        state = assigned.get((a, b))
        return None if state is None else (p.cell(a, b), state)

    def block_fits(a, b):
        block = (entry(a, b), entry(a, b + 1), entry(a + 1, b), entry(a + 1, b + 1))
        return None in block or block in t.tiles

    def extend(k):
        if k == height * width:
            return True
        a, b = divmod(k, width)
        a, b = a + 1, b + 1
        for state in states:
            assigned[(a, b)] = state
            if all(block_fits(a + da, b + db) for da in (-1, 0) for db in (-1, 0)) \
                    and extend(k + 1):
                return True
        assigned.pop((a, b), None)
        return False

    accepted = extend(0)
    logger.debug('tiling of a %dx%d picture: %s', height, width, accepted)
    return accepted


def _framed_tiles(columns, rows):
    """
    Tiles of every block over the given pairs of adjacent column kinds and
    row kinds; a pixel entry takes the state of its column.
    """
    def entry(row, column):
        if BOUNDARY in (row, column):
            return BOUNDARY
        return ('', column)

    tiles = set()
    for left, right in columns:
        for top, bottom in rows:
            tiles.add((entry(top, left), entry(top, right), entry(bottom, left), entry(bottom, right)))
    return tiles


def even_width_tiling_system():
    """
    0-bit pictures of even width: columns alternate between the states
    `odd` and `even`, starting with `odd` and ending with `even`.
    """
    columns = ((BOUNDARY, 'odd'), ('odd', 'even'), ('even', 'odd'), ('even', BOUNDARY))
    rows = ((BOUNDARY, 'pixel'), ('pixel', 'pixel'), ('pixel', BOUNDARY))
    tiles = _framed_tiles(columns, rows)
    return TilingSystem(0, {'odd', 'even'}, tiles)


def all_tiles_tiling_system(bits=0, state='q'):
    """One state and every possible tile: accepts every picture."""
    entries = [BOUNDARY] + [
        (''.join(cell), state) for cell in itertools.product('01', repeat=bits)
    ]
    return TilingSystem(bits, {state}, set(itertools.product(entries, repeat=4)))


# Tiling systems as existential monadic sentences

def state_relation(state):
    return f'Q{state}'


def _step(axis, direction, a, b):
    """b follows a along the axis (direction 1) or precedes it (-1)."""
    return Link(axis, a, b) if direction > 0 else Link(axis, b, a)


class _TilingFormula:

    def __init__(self, t):
        self.t = t

    def entry_at(self, z, entry):
        cell, state = entry
        literals = [
            Bit(k + 1, z) if bit == '1' else Not(Bit(k + 1, z)) for k, bit in enumerate(cell)
        ]
        return conj(*literals, Rel(state_relation(state), (z,)))

    def cell_is(self, di, dj, entry):
        """The cell at offset (di, dj) from pixel x holds `entry`."""
        if di == 0 and dj == 0:
            return Const(False) if entry == BOUNDARY else self.entry_at('x', entry)
        if dj == 0 or di == 0:
            axis, direction = (VERTICAL, di) if dj == 0 else (HORIZONTAL, dj)
            if entry == BOUNDARY:
                return Not(ExistsNb('y', 'x', _step(axis, direction, 'x', 'y')))
            return ExistsNb('y', 'x', And(_step(axis, direction, 'x', 'y'), self.entry_at('y', entry)))
        if entry == BOUNDARY:
            return Or(
                Not(ExistsNb('y', 'x', _step(VERTICAL, di, 'x', 'y'))),
                Not(ExistsNb('y', 'x', _step(HORIZONTAL, dj, 'x', 'y'))),
            )
        return ExistsNb('y', 'x', And(
            _step(VERTICAL, di, 'x', 'y'),
            ExistsNb('z', 'y', And(_step(HORIZONTAL, dj, 'y', 'z'), self.entry_at('z', entry))),
        ))

    def one_state(self):
        states = sorted(self.t.states)
        some = disj(*(Rel(state_relation(q), ('x',)) for q in states))
        exclusive = [
            Not(And(Rel(state_relation(q), ('x',)), Rel(state_relation(r), ('x',))))
            for q, r in itertools.combinations(states, 2)
        ]
        return conj(some, *exclusive)

    def legal_tiling(self):
        # every block containing x, with x in each of the four positions
        tiles = sorted(self.t.tiles, key=repr)
        positions = []
        for pi, pj in itertools.product((0, 1), repeat=2):
            matches = []
            for tile in tiles:
                cells = zip(itertools.product((0, 1), repeat=2), tile)
                matches.append(conj(*(
                    self.cell_is(ci - pi, cj - pj, entry) for (ci, cj), entry in cells
                )))
            positions.append(disj(*matches))
        return conj(*positions)

    def sentence(self):
        body = ForAll('x', And(self.one_state(), self.legal_tiling()))
        return exists_rel([(state_relation(q), 1) for q in sorted(self.t.states)], body)


def ts_to_formula(t):
    """
    E (Q_q) A x . OneState(x) & LegalTiling(x), true on the structure of
    a picture iff the tiling system accepts it.
    """
    return _TilingFormula(t).sentence()


# Pictures as graphs

PIXEL = 'pxl'
PORTS = (('in1', '00'), ('in2', '01'), ('out1', '10'), ('out2', '11'))
PORT_LABELS = dict(PORTS)


def picture_node(i, j, part):
    return f'p{i}_{j}_{part}'


def encode_picture_as_graph(p):
    """
    Five nodes per pixel: the center and four labeled ports. out1 is joined
    to in1 of the pixel below, out2 to in2 of the pixel on the right.
    """
    if p.bits != 0:
        raise NonZeroBits(f'only 0-bit pictures are encoded, got {p.bits} bits')
    nodes, edges, labels = [], [], {}
    for i, j in p.pixels():
        center = picture_node(i, j, PIXEL)
        nodes.append(center)
        for part, label in PORTS:
            port = picture_node(i, j, part)
            nodes.append(port)
            labels[port] = label
            edges.append((center, port))
    for i, j in p.pixels():
        if i < p.height:
            edges.append((picture_node(i, j, 'out1'), picture_node(i + 1, j, 'in1')))
        if j < p.width:
            edges.append((picture_node(i, j, 'out2'), picture_node(i, j + 1, 'in2')))
    return LabeledGraph.build(nodes, edges, labels)


class _PictureTranslator:
    """
    Rewrites a sentence about 0-bit pictures into one about their graph
    encodings: quantifiers are relativized to pixel centers and x ->i y
    becomes a walk center -> out_i port -> in_i port -> center.
    """

    def __init__(self, f):
        self.avoid = set(all_variables(f))

    def fresh(self, base):
        name = fresh_variable(base, self.avoid)
        self.avoid.add(name)
        return name

    def is_pixel(self, x):
        c = self.fresh('c')
        return And(IsNode(x), Not(ExistsNb(c, x, Link(2, x, c))))

    def has_label(self, a, label):
        c, d = self.fresh('c'), self.fresh('d')

        def bit(value, z):
            return Bit(1, z) if value == '1' else Not(Bit(1, z))

        return ExistsNb(c, a, conj(
            Link(2, a, c), bit(label[0], c),
            ExistsNb(d, c, And(Link(1, c, d), bit(label[1], d))),
        ))

    def successor(self, axis, x, y):
        a, b = self.fresh('a'), self.fresh('b')
        return ExistsNb(a, x, And(
            self.has_label(a, PORT_LABELS[f'out{axis}']),
            ExistsNb(b, a, conj(
                Link(1, a, b), self.has_label(b, PORT_LABELS[f'in{axis}']), Link(1, b, y),
            )),
        ))

    def adjacent(self, x, y):
        return disj(
            self.successor(VERTICAL, x, y), self.successor(VERTICAL, y, x),
            self.successor(HORIZONTAL, x, y), self.successor(HORIZONTAL, y, x),
        )

    def translate(self, f):
        if isinstance(f, (Const, Eq, Rel)):
            return f
        if isinstance(f, Link):
            if f.index not in (VERTICAL, HORIZONTAL):
                raise SignatureMismatch(f'pictures have two successor relations, not link{f.index}')
            return self.successor(f.index, f.left, f.right)
        if isinstance(f, (Bit, IsNode)):
            raise SignatureMismatch('only sentences over 0-bit pictures can be translated')
        if isinstance(f, Not):
            return Not(self.translate(f.body))
        if isinstance(f, (Or, And, Implies, Iff)):
            return type(f)(self.translate(f.left), self.translate(f.right))
        if isinstance(f, (ExistsRel, ForAllRel)):
            return type(f)(f.name, f.arity, self.translate(f.body))
        if getattr(f, 'node', False):
            raise Unsupported('node-restricted quantifiers have no meaning on pictures')
        if isinstance(f, Exists):
            if isinstance(f.body, Not):
                # keeps the "not exists x not" shape of a universal quantifier
                return Exists(f.var, Not(Implies(self.is_pixel(f.var), self.translate(f.body.body))))
            return Exists(f.var, And(self.is_pixel(f.var), self.translate(f.body)))
        if isinstance(f, ForAll):
            return ForAll(f.var, Implies(self.is_pixel(f.var), self.translate(f.body)))
        if isinstance(f, NEIGHBOR):
            guard = And(self.is_pixel(f.var), self.adjacent(f.anchor, f.var))
            radius = 3
        elif isinstance(f, WITHIN):
            guard = self.is_pixel(f.var)
            radius = 3 * f.radius
        else:
            raise TypeError(f'not a formula: {f!r}')
        body = self.translate(f.body)
        if isinstance(f, (ExistsNb, ExistsWithin)):
            return ExistsWithin(f.var, radius, f.anchor, And(guard, body))
        return ForAllWithin(f.var, radius, f.anchor, Implies(guard, body))


def translate_picture_formula(f):
    """
    A sentence over graphs that holds on the encoding of a 0-bit picture
    iff f holds on the picture. Bounded radii triple; the second-order
    prefix is kept as it is.
    """
    tag = classify(f)
    translated = _PictureTranslator(f).translate(f)
    logger.debug('translated a %s picture sentence', tag)
    return translated


# File formats

def _format_cell(cell):
    return cell or EMPTY_CELL


def _parse_cell(text, number):
    cell = '' if text == EMPTY_CELL else text
    if not is_bit_string(cell):
        raise ParseError(f'{text!r} is not a bit string', line=number)
    return cell


def parse_picture(text):
    """
    First line `bits=<k> rows=<H> cols=<W>`, then H lines of W cells,
    `.` standing for the empty cell of 0-bit pictures.
    """
    lines = [
        (number, raw.strip()) for number, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.strip().startswith('#')
    ]
    if not lines:
        raise ParseError('empty picture file')
    number, header = lines[0]
    fields = {}
    for option in header.split():
        key, sep, value = option.partition('=')
        if not sep or key not in ('bits', 'rows', 'cols') or not value.isdigit():
            raise ParseError(f'bad header field {option!r}', line=number)
        fields[key] = int(value)
    if set(fields) != {'bits', 'rows', 'cols'}:
        raise ParseError('expected "bits=<k> rows=<H> cols=<W>"', line=number)
    rows = lines[1:]
    if len(rows) != fields['rows']:
        raise ParseError(f'expected {fields["rows"]} rows, found {len(rows)}', line=number)
    cells = []
    for number, row in rows:
        entries = row.split()
        if len(entries) != fields['cols']:
            raise ParseError(f'expected {fields["cols"]} cells', line=number)
        cells.append(tuple(_parse_cell(entry, number) for entry in entries))
    try:
        return Picture(fields['bits'], tuple(cells))
    except (BitWidthMismatch, ValueError) as exc:
        raise ParseError(str(exc)) from exc


def format_picture(p):
    lines = [f'bits={p.bits} rows={p.height} cols={p.width}']
    lines.extend(' '.join(_format_cell(cell) for cell in row) for row in p.cells)
    return '\n'.join(lines) + '\n'


def _parse_entry(text, number):
    if text == BOUNDARY:
        return BOUNDARY
    cell, sep, state = text.partition('/')
    if not sep or not state:
        raise ParseError(f'tile entry {text!r} is neither B nor <bits>/<state>', line=number)
    return _parse_cell(cell, number), state


def parse_tiling_system(text):
    """
    `state <name>` and `tile <TL> <TR> <BL> <BR>` lines, entries `B` or
    `<bits>/<state>`. An optional `bits <k>` line fixes the width when no
    tile mentions a pixel.
    """
    states, tiles, bits = set(), [], None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        fields = line.split()
        keyword = fields[0]
        if keyword == 'state' and len(fields) == 2 and STATE_NAME.fullmatch(fields[1]):
            states.add(fields[1])
        elif keyword == 'bits' and len(fields) == 2 and fields[1].isdigit():
            bits = int(fields[1])
        elif keyword == 'tile' and len(fields) == 5:
            tiles.append((number, tuple(_parse_entry(entry, number) for entry in fields[1:])))
        else:
            raise ParseError(f'cannot read {line!r}', line=number)

    widths = {len(e[0]) for _, tile in tiles for e in tile if e != BOUNDARY}
    if bits is None:
        bits = widths.pop() if len(widths) == 1 else 0
    for number, tile in tiles:
        for entry in tile:
            if entry != BOUNDARY and entry[1] not in states:
                raise ParseError(f'undeclared state {entry[1]!r}', line=number)
    try:
        return TilingSystem(bits, states, [tile for _, tile in tiles])
    except BitWidthMismatch as exc:
        raise ParseError(str(exc)) from exc


def format_tiling_system(t):
    def entry(e):
        return e if e == BOUNDARY else f'{_format_cell(e[0])}/{e[1]}'

    lines = [f'bits {t.bits}']
    lines.extend(f'state {q}' for q in sorted(t.states))
    lines.extend(
        'tile ' + ' '.join(entry(e) for e in tile) for tile in sorted(t.tiles, key=repr)
    )
    return '\n'.join(lines) + '\n'
