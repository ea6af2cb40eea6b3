from lph.forms import EnumerateForm
from lph.graphs import enumerate_graphs, format_lg

from ._base import LphCommand, Report


class Command(LphCommand):
    help = 'Print every connected labeled graph up to isomorphism.'
    form_class = EnumerateForm

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--max-nodes', type=int, dest='max_nodes', help='at most 7')
        parser.add_argument('--labels', help='comma-separated bit strings, default the empty label')

    def run(self, data):
        blocks = [format_lg(g) for g in enumerate_graphs(data['max_nodes'], data['labels'])]
        text = '\n'.join(blocks) + f'# {len(blocks)} graphs'
        return Report(text, {'count': len(blocks), 'graphs': blocks})
