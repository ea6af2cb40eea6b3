from django.test import SimpleTestCase

from lph.exceptions import ParseError, Unsupported
from lph.graphs import LabeledGraph, enumerate_graphs
from lph.oracles import (
    check_property, colorable, eulerian, eulerian_by_walk, hamiltonian, is_prime, is_square,
    parse_property_name, satisfiable_graph,
)


def cycle(n):
    names = [f'v{i}' for i in range(n)]
    return LabeledGraph.build(names, [(names[i], names[(i + 1) % n]) for i in range(n)])


def path(n):
    names = [f'v{i}' for i in range(n)]
    return LabeledGraph.build(names, zip(names, names[1:]))


def complete(n):
    names = [f'v{i}' for i in range(n)]
    return LabeledGraph.build(names, [(a, b) for i, a in enumerate(names) for b in names[i + 1:]])


def boolean_graph(*labels):
    names = [f'v{i}' for i in range(len(labels))]
    return LabeledGraph.build(names, zip(names, names[1:]), dict(zip(names, labels)))


class PropertyNameTests(SimpleTestCase):

    def test_forms(self):
        self.assertEqual(parse_property_name('hamiltonian'), (False, 'hamiltonian', None))
        self.assertEqual(parse_property_name('nonhamiltonian'), (True, 'hamiltonian', None))
        self.assertEqual(parse_property_name('notallselected'), (True, 'allselected', None))
        self.assertEqual(parse_property_name('3colorable'), (False, 'colorable', 3))
        self.assertEqual(parse_property_name('colorable(2)'), (False, 'colorable', 2))
        self.assertEqual(parse_property_name('non3colorable'), (True, 'colorable', 3))

    def test_unknown(self):
        for name in ('planar', 'nonsquare', 'nonsatgraph', ''):
            with self.subTest(name=name):
                with self.assertRaises(Unsupported):
                    parse_property_name(name)

    def test_colorable_needs_k(self):
        with self.assertRaises(Unsupported):
            check_property('colorable', cycle(3))
        self.assertTrue(check_property('colorable', cycle(3), k=3))


class GraphOracleTests(SimpleTestCase):

    def test_colorability(self):
        self.assertTrue(check_property('3colorable', cycle(5)))
        self.assertFalse(check_property('2colorable', cycle(5)))
        self.assertTrue(check_property('2colorable', cycle(6)))
        self.assertFalse(colorable(complete(4), 3))
        self.assertFalse(colorable(path(1), 0))
        self.assertTrue(colorable(path(1), 1))

    def test_hamiltonian(self):
        self.assertFalse(hamiltonian(path(2)))
        self.assertTrue(hamiltonian(cycle(3)))
        self.assertTrue(hamiltonian(complete(5)))
        self.assertFalse(hamiltonian(path(4)))
        star = LabeledGraph.build(['c', 'a', 'b', 'd'], [('c', 'a'), ('c', 'b'), ('c', 'd')])
        self.assertFalse(hamiltonian(star))

    def test_eulerian_oracles_agree(self):
        for g in enumerate_graphs(5):
            with self.subTest(graph=g.edges):
                self.assertEqual(eulerian(g), eulerian_by_walk(g))

    def test_eulerian(self):
        self.assertTrue(eulerian(path(1)))
        self.assertFalse(eulerian(path(2)))
        self.assertTrue(eulerian(cycle(4)))
        self.assertTrue(check_property('noneulerian', complete(4)))

    def test_counting(self):
        self.assertEqual([n for n in range(13) if is_square(n)], [0, 1, 4, 9])
        self.assertEqual([n for n in range(13) if is_prime(n)], [2, 3, 5, 7, 11])
        self.assertTrue(check_property('prime', cycle(5)))
        self.assertFalse(check_property('square', cycle(5)))


class SatGraphTests(SimpleTestCase):

    def test_neighbors_must_agree(self):
        self.assertFalse(satisfiable_graph(boolean_graph('x1', '!x1')))
        self.assertTrue(satisfiable_graph(boolean_graph('x1', 'x2')))

    def test_distant_nodes_may_disagree(self):
        self.assertTrue(satisfiable_graph(boolean_graph('x1', 'x2', '!x1')))

    def test_unsatisfiable_label(self):
        self.assertFalse(satisfiable_graph(boolean_graph('x1&!x1')))
        self.assertTrue(satisfiable_graph(boolean_graph('true')))

    def test_clause_example(self):
        self.assertTrue(check_property('satgraph', boolean_graph('x1|!x2|!x3', 'x3|x4|!x5')))

    def test_bad_label(self):
        with self.assertRaises(ParseError):
            satisfiable_graph(boolean_graph('x1|'))
