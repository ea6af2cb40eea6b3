from lph.forms import RunForm
from lph.runtime import SequentialScheduler, ThreadPoolScheduler, accepts, display, execute

from ._base import Report, VerdictCommand, add_graph_arguments, identifiers


def _scheduler(name, jobs):
    if name == 'reversed':
        return SequentialScheduler(reverse=True)
    if name == 'threads':
        return ThreadPoolScheduler(jobs)
    return SequentialScheduler()


def _show(content):
    if isinstance(content, str):
        return display(content)
    return '[' + ', '.join(_show(message) if isinstance(message, str) else repr(message)
                           for message in content) + ']'


class Command(VerdictCommand):
    help = 'Execute a distributed machine (.dtm) or a reference program on a graph.'
    form_class = RunForm

    def add_arguments(self, parser):
        super().add_arguments(parser)
        add_graph_arguments(parser)
        parser.add_argument('--program', help='reference program, or global:<property>')
        parser.add_argument('--machine', help='distributed machine file (.dtm)')
        parser.add_argument('--certs', help='certificate lists, node=c1#c2,node=...')
        parser.add_argument('--scheduler', help='sequential, reversed or threads')
        parser.add_argument('--jobs', type=int, help='worker threads of the threads scheduler')
        parser.add_argument('--trace', action='store_true', help='print every round')

    def run(self, data):
        g = data['graph']
        ids = identifiers(data)
        prog = data['program'] or data['machine']
        result = execute(prog, g, ids, data['certs'],
                         scheduler=_scheduler(data.get('scheduler'), data.get('jobs')),
                         trace=data['trace'])
        trace = [
            f'round {number} {v}: receiving {_show(contents[v]["receiving"])}'
            f' sending {_show(contents[v]["sending"])}'
            for number, contents in enumerate(result.trace, start=1) for v in g.nodes
        ]
        lines = trace + [f'{v} id={ids[v] or "ε"} output={display(result.outputs[v])}'
                         for v in g.nodes]
        lines.append(f'rounds {result.rounds}, at most {result.max_steps()} steps per round')
        record = {
            'rounds': result.rounds,
            'outputs': result.outputs,
            'ids': ids,
            'max_steps': result.max_steps(),
            'trace': trace,
        }
        return Report('\n'.join(lines), record, accepts(result))
