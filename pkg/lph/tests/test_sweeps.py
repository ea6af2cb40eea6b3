from django.test import SimpleTestCase

from lph.graphs import LabeledGraph
from lph.library import named_formula
from lph.sweeps import (
    BOOLEAN_LABELS, SweepRecord, SweepReport, boolean_corpus, verify_arbiter, verify_cook_levin,
    verify_formula, verify_locality, verify_reduction,
)


class SweepReportTests(SimpleTestCase):

    def test_agreement(self):
        self.assertTrue(SweepRecord('g', True, True).agrees)
        self.assertFalse(SweepRecord('g', True, False).agrees)
        self.assertFalse(SweepRecord('g', False, False, valid=False).agrees)

    def test_summary_lists_mismatches(self):
        report = SweepReport('demo', [
            SweepRecord('node a\n', True, True),
            SweepRecord('node b\n', False, True),
        ])
        self.assertEqual(report.total, 2)
        self.assertFalse(report.ok)
        summary = report.summary()
        self.assertIn('mismatch (expected False, got True):', summary)
        self.assertIn('node b', summary)
        self.assertNotIn('node a', summary)
        self.assertEqual(report.as_dict()['records'][1]['observed'], True)

    def test_boolean_corpus(self):
        graphs = list(boolean_corpus(('x1', '!x1'), max_nodes=2))
        self.assertEqual(len(graphs), 2 + 3)
        self.assertEqual(len(list(boolean_corpus(BOOLEAN_LABELS, max_nodes=1))),
                         len(BOOLEAN_LABELS))


class SweepTests(SimpleTestCase):

    def test_eulerian_reduction_on_small_graphs(self):
        report = verify_reduction('as2euler', max_nodes=2)
        self.assertEqual(report.total, 5)
        self.assertTrue(report.ok, report.summary())

    def test_explicit_instances(self):
        g = LabeledGraph.build(['a', 'b'], [('a', 'b')], {'a': '1', 'b': '0'})
        report = verify_reduction('as2ham', instances=[g])
        self.assertEqual(report.total, 1)
        self.assertTrue(report.ok, report.summary())
        self.assertIs(report.records[0].expected, False)

    def test_identity_keeps_allselected(self):
        self.assertTrue(verify_reduction('identity', max_nodes=3).ok)

    def test_jobs_keep_the_order(self):
        one = verify_reduction('as2euler', max_nodes=3, jobs=1)
        many = verify_reduction('as2euler', max_nodes=3, jobs=3)
        self.assertEqual(one.records, many.records)

    def test_formula(self):
        report = verify_formula(named_formula('allselected'), 'allselected', max_nodes=3,
                                labels=('0', '1'))
        self.assertTrue(report.ok, report.summary())
        self.assertEqual(report.name, 'allselected')

    def test_cook_levin(self):
        report = verify_cook_levin(named_formula('allselected'), 'allselected', max_nodes=2)
        self.assertTrue(report.ok, report.summary())
        self.assertEqual(report.name, 'cook-levin/allselected')

    def test_arbiter(self):
        report = verify_arbiter(named_formula('3colorable'), max_nodes=2, name='3colorable')
        self.assertTrue(report.ok, report.summary())
        self.assertEqual(report.name, 'arbiter/3colorable')
        # one assignment for the single node, three for the edge
        self.assertEqual(report.total, 4)

    def test_locality(self):
        report = verify_locality(named_formula('3colorable'), max_nodes=3)
        self.assertTrue(report.ok, report.summary())
        # 9 nodes over the 4 graphs, three interpretations each
        self.assertEqual(report.total, 27)
