from django.test import SimpleTestCase

from lph.exceptions import ArityMismatch, FormulaSyntaxError, NotClassifiable
from lph.formulas import (
    BFL, FO, LFO, PI, SIGMA, And, Bit, Const, Eq, Exists, ExistsNb, ExistsRel, ExistsWithin,
    ForAll, ForAllNb, FragmentTag, Implies, IsNode, Link, Not, Or, Rel, classify, conj, disj,
    expand_sugar, format_formula, free_variables, nesting_radius, normalize, split_local,
    split_prefix, substitute,
)
from lph.library import LIBRARY, named_formula
from lph.parser import parse_formula


class ParserTests(SimpleTestCase):

    def test_precedence(self):
        self.assertEqual(
            parse_formula('a = b | c = d & e = f'),
            Or(Eq('a', 'b'), And(Eq('c', 'd'), Eq('e', 'f'))),
        )
        self.assertEqual(
            parse_formula('a = a -> b = b -> c = c'),
            Implies(Eq('a', 'a'), Implies(Eq('b', 'b'), Eq('c', 'c'))),
        )

    def test_quantifiers(self):
        self.assertEqual(parse_formula('E<2> y ~ x . bit1(y)'),
                         ExistsWithin('y', 2, 'x', Bit(1, 'y')))
        self.assertEqual(parse_formula('AN y ~ x . link1(x, y)'),
                         ForAllNb('y', 'x', Link(1, 'x', 'y'), True))
        self.assertEqual(parse_formula('E2 X:1 . A x . X(x) & node(x)'),
                         ExistsRel('X', 1, ForAll('x', And(Rel('X', ('x',)), IsNode('x')))))

    def test_comments_and_constants(self):
        self.assertEqual(parse_formula('# nothing\ntrue | !false'),
                         Or(Const(True), Not(Const(False))))

    def test_syntax_errors(self):
        for text in ('E x ~ x . true', 'bit0(x)', 'E<1> y . true', 'E x .', 'x = y )',
                     'E2 x:1 . true', 'E2 X:0 . true'):
            with self.subTest(text=text):
                with self.assertRaises(FormulaSyntaxError):
                    parse_formula(text)

    def test_error_position(self):
        with self.assertRaises(FormulaSyntaxError) as caught:
            parse_formula('true &\n  $')
        self.assertEqual((caught.exception.line, caught.exception.column), (2, 3))

    def test_arity_mismatch(self):
        with self.assertRaises(ArityMismatch):
            parse_formula('E x . X(x) & X(x, x)')

    def test_printed_library_parses_back(self):
        for name in LIBRARY:
            with self.subTest(name=name):
                f = named_formula(name)
                self.assertEqual(parse_formula(format_formula(f)), f)


class SyntaxToolsTests(SimpleTestCase):

    def test_free_variables(self):
        f = And(Bit(1, 'x'), ExistsNb('y', 'z', Link(1, 'y', 'w')))
        self.assertEqual(free_variables(f), {'x', 'z', 'w'})

    def test_substitution_avoids_capture(self):
        f = ExistsNb('y', 'x', Eq('x', 'y'))
        self.assertEqual(substitute(f, {'x': 'y'}), ExistsNb('y1', 'y', Eq('y', 'y1')))

    def test_normalize_pushes_negations(self):
        f = Not(And(Bit(1, 'x'), ForAllNb('y', 'x', Bit(1, 'y'))))
        self.assertEqual(normalize(f), Or(Not(Bit(1, 'x')), ExistsNb('y', 'x', Not(Bit(1, 'y')))))

    def test_expand_sugar_removes_conjunctions(self):
        expanded = expand_sugar(And(Bit(1, 'x'), IsNode('x')))
        self.assertIsInstance(expanded, Not)
        self.assertIsInstance(expanded.body, Or)
        self.assertEqual(nesting_radius(expanded), 0)

    def test_empty_junctions(self):
        self.assertEqual(conj(), Const(True))
        self.assertEqual(disj(), Const(False))
        self.assertEqual(conj(Const(True), Bit(1, 'x')), Bit(1, 'x'))


class ClassifyTests(SimpleTestCase):

    def test_library(self):
        expected = {
            'allselected': FragmentTag(LFO, 0, True),
            '3colorable': FragmentTag(SIGMA, 1, True),
            'notallselected': FragmentTag(SIGMA, 3, False),
            'non3colorable': FragmentTag(PI, 4, False),
            'hamiltonian': FragmentTag(SIGMA, 5, False),
            'nonhamiltonian': FragmentTag(PI, 4, False),
        }
        for name, tag in expected.items():
            with self.subTest(name=name):
                self.assertEqual(classify(named_formula(name)), tag)

    def test_first_order_fragments(self):
        self.assertEqual(classify(parse_formula('E x . bit1(x)')).kind, FO)
        self.assertEqual(classify(parse_formula('E y ~ x . bit1(y)')).kind, BFL)
        self.assertEqual(classify(parse_formula('A x . E y ~ x . bit1(y)')).kind, LFO)

    def test_not_classifiable(self):
        with self.assertRaises(NotClassifiable):
            classify(parse_formula('E x . E2 X:1 . X(x)'))
        with self.assertRaises(NotClassifiable):
            classify(parse_formula('E2 X:1 . E x . X(x)'))

    def test_rendering_and_containment(self):
        tag = FragmentTag(SIGMA, 1, True)
        self.assertEqual(str(tag), 'Sigma(1), monadic')
        self.assertTrue(tag.within(SIGMA, 1))
        self.assertTrue(tag.within(PI, 2))
        self.assertFalse(tag.within(PI, 1))
        self.assertTrue(FragmentTag(LFO).within(PI, 0))
        self.assertFalse(FragmentTag(FO).is_local)

    def test_prefix_blocks(self):
        blocks, matrix = split_prefix(named_formula('3colorable'))
        self.assertEqual(len(blocks), 1)
        self.assertTrue(blocks[0].existential)
        self.assertEqual(blocks[0].variables, (('C0', 1), ('C1', 1), ('C2', 1)))
        var, body = split_local(matrix)
        self.assertEqual(var, 'x')
        self.assertEqual(nesting_radius(body), 1)

    def test_radius_counts_within_quantifiers(self):
        self.assertEqual(nesting_radius(parse_formula('E<3> y ~ x . E z ~ y . true')), 4)
        self.assertEqual(nesting_radius(Exists('x', Const(True))), 0)
