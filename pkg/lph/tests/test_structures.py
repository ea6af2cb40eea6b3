from django.test import SimpleTestCase

from lph.exceptions import LabelError
from lph.graphs import LabeledGraph
from lph.structures import (
    owner, structural_degree, structural_neighborhood, structural_representation,
)


class StructuralRepresentationTests(SimpleTestCase):

    def test_single_node(self):
        s = structural_representation(LabeledGraph.build(['v'], (), {'v': '10'}))
        self.assertEqual(s.domain, ('v', ('v', 1), ('v', 2)))
        self.assertEqual(s.signature, (1, 2))
        self.assertTrue(s.holds_unary(1, ('v', 1)))
        self.assertFalse(s.holds_unary(1, ('v', 2)))
        self.assertTrue(s.holds_binary(1, ('v', 1), ('v', 2)))
        self.assertFalse(s.holds_binary(1, ('v', 2), ('v', 1)))
        self.assertTrue(s.holds_binary(2, 'v', ('v', 2)))
        self.assertEqual(structural_degree(s), 2)

    def test_edges_in_both_directions(self):
        g = LabeledGraph.build(['a', 'b'], [('a', 'b')], {'a': '1'})
        s = structural_representation(g)
        self.assertTrue(s.holds_binary(1, 'a', 'b'))
        self.assertTrue(s.holds_binary(1, 'b', 'a'))
        self.assertEqual(s.linked['a'], (('a', 1), 'b'))
        self.assertEqual(s.within('b', 1), ('a', 'b'))
        self.assertEqual(s.within('b', 2), ('a', ('a', 1), 'b'))

    def test_empty_labels(self):
        g = LabeledGraph.build(['a', 'b'], [('a', 'b')])
        s = structural_representation(g)
        self.assertEqual(len(s), 2)
        self.assertEqual(structural_degree(s), 1)

    def test_rejects_boolean_labels(self):
        with self.assertRaises(LabelError):
            structural_representation(LabeledGraph.build(['a'], (), {'a': 'x1|x2'}))

    def test_owner(self):
        self.assertEqual(owner('v'), 'v')
        self.assertEqual(owner(('v', 3)), 'v')

    def test_neighborhood(self):
        g = LabeledGraph.build(['a', 'b', 'c'], [('a', 'b'), ('b', 'c')], {'c': '1'})
        s = structural_neighborhood(g, 'a', 1)
        self.assertEqual(s.domain, ('a', 'b'))
        s = structural_neighborhood(g, 'b', 1)
        self.assertEqual(s.domain, ('a', 'b', 'c', ('c', 1)))
