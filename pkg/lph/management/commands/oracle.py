from lph.forms import OracleForm
from lph.oracles import check_property

from ._base import Report, VerdictCommand, add_graph_arguments


class Command(VerdictCommand):
    help = 'Decide a graph property by brute force.'
    form_class = OracleForm

    def add_arguments(self, parser):
        super().add_arguments(parser)
        add_graph_arguments(parser, boolean=False)
        parser.add_argument('--name', help='property, e.g. eulerian, 3colorable, satgraph')
        parser.add_argument('--k', type=int, help='number of colors for colorable')

    def run(self, data):
        value = check_property(data['name'], data['graph'], data.get('k'))
        return Report(verdict=value, record={'property': data['name']})
