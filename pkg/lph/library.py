#!/usr/bin/env python
"""
Named formulas for graph properties, built on the structural
representation of labeled graphs (signature (1, 2)).

Body constructors take the name of their free variable and return a
bounded formula; sentence constructors take no variable.
"""
from __future__ import annotations

from .formulas import (
    And, Bit, Eq, Exists, ExistsNb, ExistsWithin, ForAll, ForAllNb, ForAllWithin,
    Formula, Iff, Implies, IsNode, Link, Not, Or, Rel, conj, disj, exists_rel,
    forall_rel, free_variables, substitute,
)


def is_node(x='x'):
    return IsNode(x)


def is_bit(value, x='x'):
    """The element is a labeling bit of the given value."""
    bit = Bit(1, x) if value else Not(Bit(1, x))
    return And(Not(IsNode(x)), bit)


def is_selected(x='x'):
    """The node x is labeled with exactly the string 1."""
    y, z = 'y', 'z'
    isolated = Not(ExistsNb(z, y, Or(Link(1, z, y), Link(1, y, z))))
    return ExistsNb(y, x, And(is_bit(1, y), isolated))


def all_selected():
    return ForAll('x', is_selected('x'), node=True)


def color_names(k=3):
    return tuple(f'C{i}' for i in range(k))


def well_colored(x='x', colors=None):
    """x has exactly one color and no node neighbor shares it."""
    colors = colors or color_names()
    y = 'y'
    some_color = disj(*(Rel(c, (x,)) for c in colors))
    one_color = conj(*(
        Not(And(Rel(a, (x,)), Rel(b, (x,))))
        for i, a in enumerate(colors) for b in colors[i + 1:]
    ))
    proper = ForAllNb(y, x, conj(*(
        Not(And(Rel(c, (x,)), Rel(c, (y,)))) for c in colors
    )), node=True)
    return conj(some_color, one_color, proper)


def colorable(k=3):
    colors = color_names(k)
    return exists_rel([(c, 1) for c in colors], ForAll('x', well_colored('x', colors), node=True))


def three_colorable():
    return colorable(3)


def _instantiate(psi, x):
    if isinstance(psi, Formula):
        (free,) = free_variables(psi) or {x}
        return substitute(psi, {free: x})
    return psi(x)


def points_to(psi, x='x', parent='P', flip='X', charge='Y'):
    """
    x's parent pointer in the forest `parent` leads towards a root that
    satisfies psi. `psi` is a one-variable formula or a callable taking a
    variable name. The charges in `charge` must alternate along the
    pointers exactly at the nodes of `flip`, which rules out cycles.
    """
    y, z = 'y', 'z'
    P = lambda a, b: Rel(parent, (a, b))
    unique_parent = ExistsWithin(y, 1, x, And(
        P(x, y),
        ForAllWithin(z, 1, x, Implies(P(x, z), Eq(z, y)), node=True),
    ), node=True)
    root_case = Implies(P(x, x), And(_instantiate(psi, x), Rel(charge, (x,))))
    child_case = Implies(Not(P(x, x)), ExistsNb(y, x, And(
        P(x, y),
        Iff(Rel(charge, (x,)), Not(Iff(Rel(charge, (y,)), Rel(flip, (x,))))),
    ), node=True))
    return conj(unique_parent, root_case, child_case)


def _forest_game(psi, x='x'):
    # E2 P:2 . A2 X:1 . E2 Y:1 . AN x . PointsTo(psi)(x)
    return exists_rel([('P', 2)], forall_rel([('X', 1)], exists_rel(
        [('Y', 1)], ForAll(x, points_to(psi, x), node=True),
    )))


def exists_unselected_node():
    return _forest_game(lambda v: Not(is_selected(v)))


def not_all_selected():
    return exists_unselected_node()


def non_colorable(k=3):
    colors = color_names(k)
    return forall_rel(
        [(c, 1) for c in colors],
        _forest_game(lambda v: Not(well_colored(v, colors))),
    )


def non_three_colorable():
    return non_colorable(3)


def degree_two(x='x', relation='H'):
    """x has exactly two node neighbors in the symmetric relation."""
    y1, y2, z = 'y1', 'y2', 'z'
    H = lambda a, b: Rel(relation, (a, b))
    both_ways = lambda y: And(H(x, y), H(y, x))
    no_other = ForAllNb(z, x, Implies(
        Or(H(x, z), H(z, x)), Or(Eq(z, y1), Eq(z, y2)),
    ), node=True)
    return ExistsNb(y1, x, ExistsNb(y2, x, conj(
        Not(Eq(y1, y2)), both_ways(y1), both_ways(y2), no_other,
    ), node=True), node=True)


def in_agreement_on(name, x='x'):
    y = 'y'
    return ForAllNb(y, x, Iff(Rel(name, (x,)), Rel(name, (y,))), node=True)


def discontinuity_at(x='x'):
    y = 'y'
    return ExistsNb(y, x, And(
        Rel('H', (x, y)),
        Iff(Rel('S', (x,)), Not(Rel('S', (y,)))),
    ), node=True)


def hamiltonian():
    def body(x):
        connectivity = conj(
            in_agreement_on('C', x),
            Implies(Not(Rel('C', (x,))), in_agreement_on('S', x)),
            Implies(Rel('C', (x,)), points_to(discontinuity_at, x)),
        )
        return And(degree_two(x), connectivity)

    return exists_rel([('H', 2)], forall_rel([('S', 1)], exists_rel(
        [('C', 1), ('P', 2)], forall_rel([('X', 1)], exists_rel(
            [('Y', 1)], ForAll('x', body('x'), node=True),
        )),
    )))


def non_hamiltonian():
    def body(x):
        invalid_case = Implies(Not(Rel('C', (x,))), points_to(lambda v: Not(degree_two(v)), x))
        disjoint_case = Implies(Rel('C', (x,)), And(
            Not(discontinuity_at(x)),
            points_to(lambda v: Not(in_agreement_on('S', v)), x),
        ))
        return conj(in_agreement_on('C', x), invalid_case, disjoint_case)

    return forall_rel([('H', 2)], exists_rel(
        [('C', 1), ('S', 1), ('P', 2)], forall_rel([('X', 1)], exists_rel(
            [('Y', 1)], ForAll('x', body('x'), node=True),
        )),
    ))


def exists_node(psi, x='x'):
    """Unbounded first-order counterpart, outside the local hierarchy."""
    return Exists(x, _instantiate(psi, x), node=True)


LIBRARY = {
    'allselected': all_selected,
    'notallselected': not_all_selected,
    '3colorable': three_colorable,
    'non3colorable': non_three_colorable,
    'hamiltonian': hamiltonian,
    'nonhamiltonian': non_hamiltonian,
}


def named_formula(name):
    """A library sentence by name, e.g. '3colorable'."""
    try:
        return LIBRARY[name]()
    except KeyError:
        raise KeyError(f'unknown library formula {name!r}; known: {", ".join(LIBRARY)}')
