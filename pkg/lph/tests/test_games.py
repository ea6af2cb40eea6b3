from django.test import SimpleTestCase

from lph.exceptions import BudgetExceeded, NotLocallyUnique
from lph.games import ADAM, EVE, GameSpec, arbitrate, bit_strings, check_local_repairability
from lph.graphs import LabeledGraph
from lph.programs import (
    AllSelectedDecider, CertificateEqualsLabel, EmptyCertificateDecider, IdenticalCertificates,
)


def path(labels):
    names = [f'u{i}' for i in range(1, len(labels) + 1)]
    return LabeledGraph.build(names, zip(names, names[1:]), dict(zip(names, labels)))


IDS = {'u1': '0', 'u2': '1', 'u3': '00'}


class GameSpecTests(SimpleTestCase):

    def test_alternation(self):
        spec = GameSpec(3, ADAM)
        self.assertEqual([spec.player(k) for k in range(3)], [ADAM, EVE, ADAM])

    def test_validation(self):
        with self.assertRaises(ValueError):
            GameSpec(-1)
        with self.assertRaises(ValueError):
            GameSpec(1, 'Bob')
        with self.assertRaises(ValueError):
            GameSpec(2, restrictors=(CertificateEqualsLabel(),))

    def test_bit_strings(self):
        self.assertEqual(list(bit_strings(2)), ['', '0', '1', '00', '01', '10', '11'])


class ArbitrateTests(SimpleTestCase):

    def test_level_zero_runs_the_arbiter(self):
        self.assertTrue(arbitrate(AllSelectedDecider(), path('111'), IDS, GameSpec(0)))
        self.assertFalse(arbitrate(AllSelectedDecider(), path('110'), IDS, GameSpec(0)))

    def test_first_player_decides(self):
        g = path(['', ''])
        self.assertTrue(arbitrate(EmptyCertificateDecider(), g, IDS, GameSpec(1, EVE)))
        self.assertFalse(arbitrate(EmptyCertificateDecider(), g, IDS, GameSpec(1, ADAM)))

    def test_restrictor_binds_eve(self):
        spec = GameSpec(1, EVE, restrictors=(CertificateEqualsLabel(),))
        self.assertTrue(arbitrate(IdenticalCertificates(), path('111'), IDS, spec))
        self.assertFalse(arbitrate(IdenticalCertificates(), path('110'), IDS, spec))

    def test_restrictor_binds_adam(self):
        spec = GameSpec(1, ADAM, restrictors=(CertificateEqualsLabel(),))
        self.assertFalse(arbitrate(EmptyCertificateDecider(), path('11'), IDS, spec))
        self.assertTrue(arbitrate(EmptyCertificateDecider(), path(['', '']), IDS, spec))

    def test_two_levels(self):
        # the arbiter only reads the last certificate
        g = path(['', ''])
        self.assertTrue(arbitrate(IdenticalCertificates(), g, IDS, GameSpec(2, ADAM, cert_cap=1)))
        self.assertFalse(arbitrate(IdenticalCertificates(), g, IDS, GameSpec(2, EVE, cert_cap=1)))

    def test_cap_limits_certificates(self):
        spec = GameSpec(1, ADAM, cert_cap=0)
        self.assertTrue(arbitrate(EmptyCertificateDecider(), path('1'), IDS, spec))

    def test_budget(self):
        with self.assertRaises(BudgetExceeded):
            arbitrate(IdenticalCertificates(), path('111'), IDS, GameSpec(1, ADAM), budget=2)

    def test_identifiers_checked(self):
        with self.assertRaises(NotLocallyUnique):
            arbitrate(AllSelectedDecider(), path('11'), {'u1': '0', 'u2': '0'}, GameSpec(0))
        with self.assertRaises(NotLocallyUnique):
            arbitrate(AllSelectedDecider(), path('111'), {'u1': '0', 'u2': '1', 'u3': '0'},
                      GameSpec(0, rho=1))


class RepairabilityTests(SimpleTestCase):

    def test_label_restrictor_is_repairable(self):
        spec = GameSpec(1, cert_cap=1)
        self.assertTrue(check_local_repairability(CertificateEqualsLabel(), path(['', '']),
                                                  IDS, spec))

    def test_agreement_restrictor_is_not(self):
        spec = GameSpec(1, cert_cap=1)
        self.assertFalse(check_local_repairability(IdenticalCertificates(), path(['', '']),
                                                   IDS, spec))
