from pathlib import Path

from django.test import SimpleTestCase, tag

from lph.evaluator import evaluate, satisfies
from lph.exceptions import (
    BitWidthMismatch, NonZeroBits, ParseError, SignatureMismatch, Unsupported,
)
from lph.graphs import validate_graph
from lph.parser import parse_formula
from lph.pictures import (
    BOUNDARY, Picture, all_tiles_tiling_system, encode_picture_as_graph, enumerate_pictures,
    even_width_tiling_system, format_picture, format_tiling_system, parse_picture,
    parse_tiling_system, picture_node, picture_structure, translate_picture_formula, ts_accepts,
    ts_to_formula,
)
from lph.structures import structural_degree, structural_representation

SAMPLES = Path(__file__).resolve().parent.parent / 'samples'


def sample(name):
    return (SAMPLES / name).read_text()


class PictureTests(SimpleTestCase):

    def test_blank(self):
        p = Picture.blank(2, 3)
        self.assertEqual(p.size, (2, 3))
        self.assertEqual(p.cell(2, 3), '')
        self.assertEqual(len(p.pixels()), 6)

    def test_cells_must_match_the_width(self):
        with self.assertRaises(BitWidthMismatch):
            Picture(1, (('10',),))
        with self.assertRaises(ValueError):
            Picture(0, (('', ''), ('',)))
        with self.assertRaises(ValueError):
            Picture(0, ())

    def test_structure(self):
        s = picture_structure(parse_picture(sample('bits.pic')))
        self.assertEqual(s.signature, (1, 2))
        self.assertTrue(s.holds_unary(1, (1, 1)))
        self.assertFalse(s.holds_unary(1, (1, 2)))
        self.assertTrue(s.holds_binary(1, (1, 2), (2, 2)))
        self.assertTrue(s.holds_binary(2, (2, 1), (2, 2)))
        self.assertFalse(s.holds_binary(2, (1, 2), (2, 1)))

    def test_enumerate(self):
        self.assertEqual(len(list(enumerate_pictures(2, 2))), 4)
        self.assertEqual(len(list(enumerate_pictures(1, 2, bits=1))), 2 + 4)


class TilingTests(SimpleTestCase):

    def test_even_width(self):
        t = even_width_tiling_system()
        for p in enumerate_pictures(3, 4):
            with self.subTest(size=p.size):
                self.assertEqual(ts_accepts(t, p), p.width % 2 == 0)

    def test_sample_pictures(self):
        t = parse_tiling_system(sample('even_width.ts'))
        self.assertTrue(ts_accepts(t, parse_picture(sample('2x2.pic'))))
        self.assertFalse(ts_accepts(t, parse_picture(sample('2x3.pic'))))

    def test_all_tiles(self):
        t = all_tiles_tiling_system(bits=1)
        self.assertTrue(ts_accepts(t, parse_picture(sample('bits.pic'))))

    def test_bit_width_mismatch(self):
        with self.assertRaises(BitWidthMismatch):
            ts_accepts(even_width_tiling_system(), parse_picture(sample('bits.pic')))

    def test_formula_agrees_on_small_pictures(self):
        t = even_width_tiling_system()
        f = ts_to_formula(t)
        for p in enumerate_pictures(2, 2):
            with self.subTest(size=p.size):
                self.assertEqual(evaluate(picture_structure(p), f), ts_accepts(t, p))

    @tag('slow')
    def test_formula_agrees_up_to_three_by_four(self):
        t = even_width_tiling_system()
        f = ts_to_formula(t)
        for p in enumerate_pictures(3, 4):
            with self.subTest(size=p.size):
                self.assertEqual(evaluate(picture_structure(p), f), ts_accepts(t, p))


class EncodingTests(SimpleTestCase):

    def test_node_and_edge_counts(self):
        for p in enumerate_pictures(3, 3):
            height, width = p.size
            with self.subTest(size=p.size):
                g = encode_picture_as_graph(p)
                edges = 4 * height * width + height * (width - 1) + width * (height - 1)
                self.assertEqual(len(g), 5 * height * width)
                self.assertEqual(len(g.edges), edges)
                validate_graph(g)
                self.assertLessEqual(structural_degree(structural_representation(g)), 4)

    def test_ports(self):
        g = encode_picture_as_graph(Picture.blank(2, 1))
        self.assertEqual(g.labeling[picture_node(1, 1, 'out1')], '10')
        self.assertEqual(g.labeling[picture_node(1, 1, 'pxl')], '')
        self.assertTrue(g.has_edge(picture_node(1, 1, 'out1'), picture_node(2, 1, 'in1')))

    def test_only_blank_pictures(self):
        with self.assertRaises(NonZeroBits):
            encode_picture_as_graph(parse_picture(sample('bits.pic')))


class TranslationTests(SimpleTestCase):

    def test_vertical_successor(self):
        f = parse_formula(sample('vertical.lso'))
        translated = translate_picture_formula(f)
        for height, width in ((1, 1), (1, 2), (2, 1)):
            p = Picture.blank(height, width)
            with self.subTest(size=p.size):
                self.assertEqual(evaluate(picture_structure(p), f), height >= 2)
                self.assertEqual(satisfies(encode_picture_as_graph(p), translated), height >= 2)

    @tag('slow')
    def test_vertical_successor_up_to_three_by_three(self):
        f = parse_formula(sample('vertical.lso'))
        translated = translate_picture_formula(f)
        for p in enumerate_pictures(3, 3):
            with self.subTest(size=p.size):
                expected = evaluate(picture_structure(p), f)
                self.assertEqual(expected, p.height >= 2)
                self.assertEqual(satisfies(encode_picture_as_graph(p), translated), expected)

    def test_horizontal_successor(self):
        f = parse_formula('E x . E y . link2(x, y)')
        translated = translate_picture_formula(f)
        for height, width in ((2, 1), (1, 2)):
            p = Picture.blank(height, width)
            with self.subTest(size=p.size):
                self.assertEqual(satisfies(encode_picture_as_graph(p), translated), width >= 2)

    def test_rejects_graph_only_atoms(self):
        for text in ('E x . bit1(x)', 'E x . node(x)', 'E x . E y . link3(x, y)'):
            with self.subTest(text=text):
                with self.assertRaises(SignatureMismatch):
                    translate_picture_formula(parse_formula(text))
        with self.assertRaises(Unsupported):
            translate_picture_formula(parse_formula('EN x . true'))


class FileFormatTests(SimpleTestCase):

    def test_picture(self):
        p = parse_picture(sample('bits.pic'))
        self.assertEqual(p.bits, 1)
        self.assertEqual(p.cells, (('1', '0'), ('0', '0')))
        self.assertEqual(parse_picture(format_picture(p)), p)
        self.assertEqual(format_picture(Picture.blank(1, 2)), 'bits=0 rows=1 cols=2\n. .\n')

    def test_picture_errors(self):
        bad = (
            '',
            'bits=0 rows=1\n.\n',
            'bits=0 rows=2 cols=1\n.\n',
            'bits=0 rows=1 cols=2\n.\n',
            'bits=1 rows=1 cols=1\n2\n',
            'bits=1 rows=1 cols=1\n.\n',
        )
        for text in bad:
            with self.subTest(text=text):
                with self.assertRaises(ParseError):
                    parse_picture(text)

    def test_tiling_system(self):
        t = parse_tiling_system(sample('even_width.ts'))
        self.assertEqual(t, even_width_tiling_system())
        self.assertEqual(len(t.tiles), 12)
        self.assertIn((BOUNDARY, BOUNDARY, BOUNDARY, ('', 'odd')), t.tiles)
        self.assertEqual(parse_tiling_system(format_tiling_system(t)), t)

    def test_tiling_system_errors(self):
        bad = (
            'state q\ntile B B B\n',
            'tile B B B ./q\n',
            'state q\ntile B B B q\n',
            'state q-r\n',
        )
        for text in bad:
            with self.subTest(text=text):
                with self.assertRaises(ParseError):
                    parse_tiling_system(text)
