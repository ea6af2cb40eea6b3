from django.test import SimpleTestCase

from lph.evaluator import (
    BRANCHING, ENUMERATE, Evaluator, VariableAssignment, evaluate, holds_at, satisfies,
)
from lph.exceptions import ArityMismatch, SearchSpaceTooLarge, SignatureMismatch, UnboundVariable
from lph.formulas import Bit, ExistsWithin, Rel, expand_sugar
from lph.graphs import LabeledGraph
from lph.library import named_formula
from lph.parser import parse_formula
from lph.structures import structural_representation


def cycle(n):
    names = [f'v{i}' for i in range(n)]
    return LabeledGraph.build(names, [(names[i], names[(i + 1) % n]) for i in range(n)])


def complete(n, label=''):
    names = [f'v{i}' for i in range(n)]
    edges = [(a, b) for i, a in enumerate(names) for b in names[i + 1:]]
    return LabeledGraph.build(names, edges, {v: label for v in names})


class FirstOrderTests(SimpleTestCase):

    def setUp(self):
        names = [f'u{i}' for i in range(1, 6)]
        self.path = LabeledGraph.build(names, zip(names, names[1:]), {'u3': '1'})
        self.s = structural_representation(self.path)

    def test_within_counts_structural_distance(self):
        # the bit of u3 is three links away from u1
        near = ExistsWithin('y', 2, 'x', Bit(1, 'y'))
        far = ExistsWithin('y', 3, 'x', Bit(1, 'y'))
        self.assertFalse(holds_at(self.s, near, 'u1'))
        self.assertTrue(holds_at(self.s, far, 'u1'))

    def test_node_atom(self):
        f = parse_formula('E x . !node(x) & bit1(x)')
        self.assertTrue(evaluate(self.s, f))
        self.assertFalse(evaluate(self.s, parse_formula('E x . node(x) & bit1(x)')))

    def test_sugar_agrees_with_core(self):
        for name in ('allselected', '3colorable'):
            f = named_formula(name)
            for g in (self.path, complete(3, '1'), cycle(4)):
                with self.subTest(name=name, graph=len(g)):
                    self.assertEqual(satisfies(g, f), satisfies(g, expand_sugar(f)))

    def test_unbound_variable(self):
        with self.assertRaises(UnboundVariable):
            evaluate(self.s, Bit(1, 'x'))
        with self.assertRaises(UnboundVariable):
            evaluate(self.s, Bit(1, 'x'), VariableAssignment({'x': 'nowhere'}))

    def test_signature_mismatch(self):
        with self.assertRaises(SignatureMismatch):
            evaluate(self.s, parse_formula('E x . bit2(x)'))
        with self.assertRaises(SignatureMismatch):
            evaluate(self.s, parse_formula('E x . E y . link3(x, y)'))

    def test_free_relation_from_assignment(self):
        f = Rel('X', ('x',))
        assignment = VariableAssignment({'x': 'u2'}, {'X': {('u2',)}})
        self.assertTrue(evaluate(self.s, f, assignment))
        with self.assertRaises(ArityMismatch):
            evaluate(self.s, f, VariableAssignment({'x': 'u2'}, {'X': {('u2', 'u3')}}))
        with self.assertRaises(UnboundVariable):
            evaluate(self.s, f, VariableAssignment({'x': 'u2'}))


class SecondOrderTests(SimpleTestCase):

    def test_all_selected(self):
        f = named_formula('allselected')
        self.assertTrue(satisfies(complete(3, '1'), f))
        self.assertFalse(satisfies(LabeledGraph.build(['a', 'b'], [('a', 'b')],
                                                      {'a': '1', 'b': '11'}), f))

    def test_three_colorable_both_strategies(self):
        f = named_formula('3colorable')
        for strategy in (BRANCHING, ENUMERATE):
            with self.subTest(strategy=strategy):
                self.assertTrue(satisfies(cycle(5), f, strategy=strategy))
                self.assertFalse(satisfies(complete(4), f, strategy=strategy))

    def test_two_colorable(self):
        f = parse_formula(
            'E2 R:1 . AN x . AN y ~ x . !(R(x) <-> R(y))'
        )
        self.assertTrue(satisfies(cycle(4), f))
        self.assertFalse(satisfies(cycle(5), f))

    def test_universal_relation(self):
        f = parse_formula('A2 X:1 . E x . X(x) | !X(x)')
        self.assertTrue(satisfies(cycle(3), f))

    def test_budget(self):
        with self.assertRaises(SearchSpaceTooLarge):
            satisfies(complete(4), named_formula('3colorable'), budget=10)

    def test_domain_caps_bound_enumeration_only(self):
        # 12 elements, past the unary cap of 8
        f = parse_formula('E2 R:1 . AN x . AN y ~ x . !(R(x) <-> R(y))')
        with self.assertRaises(SearchSpaceTooLarge):
            satisfies(cycle(12), f, strategy=ENUMERATE)
        self.assertTrue(satisfies(cycle(12), f, strategy=BRANCHING))
        with self.assertRaises(SearchSpaceTooLarge):
            satisfies(cycle(12), f, strategy=BRANCHING, budget=5)

    def test_unknown_strategy(self):
        with self.assertRaises(ValueError):
            Evaluator(structural_representation(cycle(3)), strategy='guess')
