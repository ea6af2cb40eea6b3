from pathlib import Path

from django.test import SimpleTestCase

from lph.exceptions import (
    DuplicateSenderId, HeadUnderflow, MachineError, MissingId, NotLocallyUnique, ParseError,
    RoundLimitExceeded, StepLimitExceeded, UndefinedTransition,
)
from lph.graphs import parse_lg
from lph.programs import NeighborhoodSelectedProgram
from lph.runtime import (
    ExecutionLimits, SequentialScheduler, TapeConfiguration, ThreadPoolScheduler, accepts,
    display, execute, parse_dtm, sort_incoming, split_messages, step_local, tape_content,
)

SAMPLES = Path(__file__).resolve().parent.parent / 'samples'


def sample(name):
    return (SAMPLES / name).read_text()


class TapeTests(SimpleTestCase):

    def test_incoming_sorted_by_sender(self):
        self.assertEqual(sort_incoming([('1', '11'), ('0', '0'), ('', '')]), '#0#11#')

    def test_duplicate_sender(self):
        with self.assertRaises(DuplicateSenderId):
            sort_incoming([('1', '0'), ('1', '1')])

    def test_split_messages_pads_and_truncates(self):
        self.assertEqual(split_messages('>1#0#11', 2), ['1', '0'])
        self.assertEqual(split_messages('>1#0#11__', 4), ['1', '0', '11', ''])
        self.assertEqual(split_messages('>', 1), [''])

    def test_tape_content(self):
        self.assertEqual(tape_content('>10#__'), '10#')
        self.assertEqual(display('>1#_'), '▷1⌗␣')


class MachineTests(SimpleTestCase):

    def setUp(self):
        self.machine = parse_dtm(sample('selected.dtm'))

    def test_accepts_all_selected(self):
        g, _ = parse_lg(sample('k3.lg'))
        result = execute(self.machine, g, {'a': '0', 'b': '1', 'c': '00'})
        self.assertTrue(accepts(result))
        self.assertEqual(result.rounds, 1)
        self.assertEqual(result.outputs, {'a': '1', 'b': '1', 'c': '1'})
        self.assertEqual(result.graph.labeling, {'a': '1', 'b': '1', 'c': '1'})

    def test_rejects_unselected_node(self):
        g, ids = parse_lg(sample('path110.lg'))
        result = execute(self.machine, g, ids)
        self.assertFalse(accepts(result))
        self.assertEqual(result.verdicts, {'u1': True, 'u2': True, 'u3': False})

    def test_step_counts_recorded(self):
        g, ids = parse_lg(sample('path110.lg'))
        result = execute(self.machine, g, ids)
        self.assertGreater(result.max_steps(), 0)
        self.assertEqual(len(result.steps['u1']), 1)

    def test_step_limit(self):
        machine = parse_dtm('trans qstart > > > -> qstart > > S S S\n')
        g, ids = parse_lg(sample('path110.lg'))
        with self.assertRaises(StepLimitExceeded):
            execute(machine, g, ids, limits=ExecutionLimits(5, 50))

    def test_round_limit(self):
        machine = parse_dtm('trans qstart > > > -> qpause > > S S S\n')
        g, ids = parse_lg(sample('path110.lg'))
        with self.assertRaises(RoundLimitExceeded):
            execute(machine, g, ids, limits=ExecutionLimits(3, 50))

    def test_undefined_transition(self):
        g, ids = parse_lg(sample('path110.lg'))
        with self.assertRaises(UndefinedTransition):
            execute(parse_dtm('state idle\n'), g, ids)


class StepLocalTests(SimpleTestCase):

    def test_moves_and_pause(self):
        machine = parse_dtm('trans qstart > > > -> qpause > > S R R\n')
        cfg = step_local(machine, TapeConfiguration('qstart', ('>', '>1', '>')))
        self.assertEqual(cfg.state, 'qpause')
        self.assertEqual(cfg.heads, (0, 1, 1))
        self.assertEqual(cfg.tapes, ('>', '>1', '>'))
        with self.assertRaises(MachineError):
            step_local(machine, cfg)

    def test_writes_past_the_end(self):
        machine = parse_dtm('trans qstart > 1 _ -> qpause 0 1 S S S\n')
        cfg = step_local(machine, TapeConfiguration('qstart', ('>', '>1', '>'), (0, 1, 1)))
        self.assertEqual(cfg.tapes, ('>', '>0', '>1'))

    def test_head_underflow(self):
        machine = parse_dtm('trans qstart > 1 > -> qpause 1 > S L S\n')
        with self.assertRaises(HeadUnderflow):
            step_local(machine, TapeConfiguration('qstart', ('>', '1', '>')))


class ParseDtmTests(SimpleTestCase):

    def test_reserved_states_declared(self):
        machine = parse_dtm('')
        self.assertIn('qstart', machine.states)
        self.assertIn('qstop', machine.states)

    def test_invalid_transitions(self):
        for text in (
            'trans qstart > 0 > -> qstop > > S S S',
            'trans qstart > > > -> nowhere > > S S S',
            'trans qstart > > > -> qstop 2 > S S S',
            'trans qstart > > > -> qstop > > S L S',
            'trans qstop > > > -> qstart > > S S S',
            'trans qstart > > >',
            'tape 3',
        ):
            with self.subTest(text=text):
                with self.assertRaises(ParseError):
                    parse_dtm(text)

    def test_duplicate_transition(self):
        line = 'trans qstart > > > -> qstop > > S S S\n'
        with self.assertRaises(ParseError):
            parse_dtm(line * 2)


class ExecuteTests(SimpleTestCase):

    def setUp(self):
        self.g, self.ids = parse_lg(sample('path110.lg'))

    def test_identifiers_checked(self):
        with self.assertRaises(MissingId):
            execute(NeighborhoodSelectedProgram(), self.g, {'u1': '0'})
        with self.assertRaises(NotLocallyUnique):
            execute(NeighborhoodSelectedProgram(), self.g, {'u1': '0', 'u2': '0', 'u3': '1'})

    def test_schedulers_agree(self):
        outcomes = []
        for scheduler in (SequentialScheduler(), SequentialScheduler(reverse=True),
                          ThreadPoolScheduler(3)):
            result = execute(NeighborhoodSelectedProgram(), self.g, self.ids, scheduler=scheduler)
            outcomes.append((result.outputs, result.rounds))
        self.assertEqual(outcomes[0], ({'u1': '1', 'u2': '0', 'u3': '0'}, 2))
        self.assertEqual(outcomes[0], outcomes[1])
        self.assertEqual(outcomes[0], outcomes[2])

    def test_trace(self):
        result = execute(NeighborhoodSelectedProgram(), self.g, self.ids, trace=True)
        self.assertEqual(len(result.trace), 2)
        self.assertEqual(result.trace[0]['u2']['sending'], ['1', '1'])
        self.assertEqual(list(result.trace[1]['u2']['receiving']), ['1', '0'])
