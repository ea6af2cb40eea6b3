from lph import conf
from lph.forms import GenIdsForm
from lph.graphs import format_lg, generate_small_ids

from ._base import LphCommand, Report, add_graph_arguments


class Command(LphCommand):
    help = 'Print a graph with small locally unique identifiers.'
    form_class = GenIdsForm

    def add_arguments(self, parser):
        super().add_arguments(parser)
        add_graph_arguments(parser)

    def run(self, data):
        seed = data.get('seed')
        seed = conf.get('LPH_DEFAULT_SEED') if seed is None else seed
        ids = generate_small_ids(data['graph'], data.get('rho') or 1, seed)
        text = format_lg(data['graph'], ids)
        return Report(text.rstrip(), {'ids': ids})
