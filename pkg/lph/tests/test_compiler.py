from django.test import SimpleTestCase

from lph.compiler import (
    Fragment, compile_formula_to_arbiter, decide_via_formula, decode_fragment,
    encode_fragment, encode_number, encode_string, required_rho,
)
from lph.exceptions import NotClassifiable, Unsupported
from lph.formulas import SIGMA
from lph.games import ADAM, EVE, arbitrate
from lph.graphs import LabeledGraph
from lph.library import named_formula
from lph.parser import parse_formula
from lph.runtime import accepts, execute

TWO_COLORABLE = parse_formula('E2 R:1 . AN x . AN y ~ x . !(R(x) <-> R(y))')


def complete(n, label=''):
    names = [f'v{i}' for i in range(n)]
    edges = [(a, b) for i, a in enumerate(names) for b in names[i + 1:]]
    return LabeledGraph.build(names, edges, {v: label for v in names})


class CodeTests(SimpleTestCase):

    def test_self_delimiting_codes(self):
        self.assertEqual(encode_string('10'), '110001')
        self.assertEqual(encode_string(''), '01')
        self.assertEqual(encode_number(5), '11001101')

    def test_fragment_codec(self):
        fragment = Fragment(('101',), (frozenset({(0, '1', 0), (2, '', 1)}),))
        self.assertEqual(decode_fragment(encode_fragment(fragment), 1, 1, 3), fragment)

    def test_every_bit_string_decodes(self):
        self.assertEqual(decode_fragment('', 1, 1, 2), Fragment(('00',), (frozenset(),)))
        self.assertEqual(decode_fragment('1', 2, 0, 1), Fragment(('1', '0'), ()))
        self.assertEqual(decode_fragment('0110', 0, 1, 1).binary, (frozenset(),))


class CompileTests(SimpleTestCase):

    def test_three_colorable(self):
        arbiter = compile_formula_to_arbiter(named_formula('3colorable'))
        self.assertEqual(arbiter.radius, 1)
        self.assertEqual(arbiter.tag.kind, SIGMA)
        self.assertEqual(arbiter.spec.level, 1)
        self.assertEqual(arbiter.spec.first_player, EVE)
        self.assertEqual(arbiter.spec.rho, 2)
        self.assertEqual(arbiter.program.round_bound, 3)

    def test_universal_prefix(self):
        arbiter = compile_formula_to_arbiter(parse_formula('A2 X:1 . A x . X(x) | !X(x)'))
        self.assertEqual(arbiter.spec.first_player, ADAM)

    def test_required_rho(self):
        self.assertEqual(required_rho(named_formula('allselected')), 3)
        self.assertEqual(required_rho(parse_formula('E2 P:2 . A x . E<2> y ~ x . P(x, y)')), 4)
        self.assertEqual(required_rho(parse_formula('A x . true')), 1)

    def test_rejects_non_local_and_high_arity(self):
        with self.assertRaises(NotClassifiable):
            compile_formula_to_arbiter(parse_formula('E x . bit1(x)'))
        with self.assertRaises(Unsupported):
            compile_formula_to_arbiter(parse_formula('E2 T:3 . A x . T(x, x, x)'))

    def test_arbiter_reads_certificates(self):
        arbiter = compile_formula_to_arbiter(TWO_COLORABLE)
        g = LabeledGraph.build(['a', 'b'], [('a', 'b')])
        ids = {'a': '0', 'b': '1'}
        self.assertTrue(accepts(execute(arbiter.program, g, ids, {'a': '1', 'b': '0'})))
        self.assertFalse(accepts(execute(arbiter.program, g, ids, {'a': '1', 'b': '1'})))


class DecideViaFormulaTests(SimpleTestCase):

    def test_lfo_sentence(self):
        f = named_formula('allselected')
        self.assertTrue(decide_via_formula(complete(3, '1'), f))
        self.assertFalse(decide_via_formula(complete(2, '0'), f))

    def test_existential_game(self):
        self.assertTrue(decide_via_formula(complete(2), TWO_COLORABLE))
        self.assertFalse(decide_via_formula(complete(3), TWO_COLORABLE))

    def test_universal_game(self):
        f = parse_formula('A2 X:1 . A x . X(x) | !X(x)')
        self.assertTrue(decide_via_formula(complete(2), f))

    def test_game_matches_evaluation(self):
        arbiter = compile_formula_to_arbiter(named_formula('3colorable'))
        g = complete(2)
        ids = {'v0': '0', 'v1': '1'}
        self.assertTrue(arbitrate(arbiter.program, g, ids, arbiter.spec))
