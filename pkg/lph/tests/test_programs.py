from pathlib import Path

from django.test import SimpleTestCase

from lph.exceptions import Unsupported
from lph.graphs import LabeledGraph, parse_lg
from lph.programs import (
    ACCEPT, PROGRAMS, REJECT, CertificateEqualsLabel, ConstantProgram, GlobalPropertyDecider,
    IdenticalCertificates, get_program, verdict,
)
from lph.runtime import accepts, execute

SAMPLES = Path(__file__).resolve().parent.parent / 'samples'
UNIQUE = {'a': '0', 'b': '1', 'c': '00'}


def load(name):
    return parse_lg((SAMPLES / name).read_text())


class LookupTests(SimpleTestCase):

    def test_registry(self):
        for name, program in PROGRAMS.items():
            with self.subTest(name=name):
                self.assertIs(get_program(name), program)

    def test_global_names(self):
        program = get_program('global:eulerian')
        self.assertIsInstance(program, GlobalPropertyDecider)
        self.assertEqual(program.name, 'global:eulerian')

    def test_unknown(self):
        with self.assertRaises(Unsupported):
            get_program('no-such-program')
        with self.assertRaises(Unsupported):
            get_program('global:planar')

    def test_verdict(self):
        self.assertEqual(verdict(True), ACCEPT)
        self.assertEqual(verdict(False), REJECT)


class DeciderTests(SimpleTestCase):

    def test_allselected(self):
        g, _ = load('k3.lg')
        self.assertTrue(accepts(execute(get_program('allselected'), g, UNIQUE)))
        g, ids = load('path110.lg')
        result = execute(get_program('allselected'), g, ids)
        self.assertFalse(accepts(result))
        self.assertEqual(result.verdicts, {'u1': True, 'u2': True, 'u3': False})

    def test_constant(self):
        g, _ = load('k3.lg')
        self.assertFalse(accepts(execute(ConstantProgram(False), g, UNIQUE)))

    def test_even_degree(self):
        g, _ = load('k3.lg')
        self.assertTrue(accepts(execute(get_program('eulerian'), g, UNIQUE)))
        g, _ = load('p2.lg')
        self.assertFalse(accepts(execute(get_program('eulerian'), g, {'a': '0', 'b': '1'})))

    def test_global_property(self):
        g, _ = load('k3.lg')
        result = execute(get_program('global:eulerian'), g, UNIQUE)
        self.assertTrue(accepts(result))
        self.assertEqual(result.rounds, 3)
        g, _ = load('p2.lg')
        self.assertFalse(accepts(execute(get_program('global:hamiltonian'), g, {'a': '0', 'b': '1'})))

    def test_global_property_on_single_node(self):
        g = LabeledGraph.build(['v'], (), {'v': '1'})
        result = execute(get_program('global:allselected'), g, {'v': '0'})
        self.assertTrue(accepts(result))
        self.assertEqual(result.rounds, 1)


class RestrictorTests(SimpleTestCase):

    def test_certificate_equals_label(self):
        g, _ = load('k3.lg')
        good = {'a': '0#1', 'b': '1', 'c': '1'}
        bad = {'a': '1#0', 'b': '1', 'c': '1'}
        self.assertTrue(accepts(execute(CertificateEqualsLabel(), g, UNIQUE, certs=good)))
        self.assertFalse(accepts(execute(CertificateEqualsLabel(), g, UNIQUE, certs=bad)))

    def test_identical_certificates(self):
        g, _ = load('k3.lg')
        same = {v: '01' for v in 'abc'}
        self.assertTrue(accepts(execute(IdenticalCertificates(), g, UNIQUE, certs=same)))
        self.assertFalse(accepts(execute(IdenticalCertificates(), g, UNIQUE,
                                         certs={**same, 'c': '0'})))

    def test_empty_certificates(self):
        g, _ = load('p2.lg')
        ids = {'a': '0', 'b': '1'}
        self.assertTrue(accepts(execute(get_program('empty-certificates'), g, ids)))
        self.assertFalse(accepts(execute(get_program('empty-certificates'), g, ids,
                                         certs={'a': '#1'})))
