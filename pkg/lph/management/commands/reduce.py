from lph.cook_levin import cook_levin_program, cook_levin_translate
from lph.forms import COOK_LEVIN, ReduceForm
from lph.graphs import format_lg
from lph.reductions import derive_output_ids, format_cluster_map, get_reduction, run_reduction

from ._base import LphCommand, Report, add_graph_arguments, identifiers


class Command(LphCommand):
    help = 'Apply a local reduction to a graph and print the output graph with its cluster map.'
    form_class = ReduceForm

    def add_arguments(self, parser):
        super().add_arguments(parser)
        add_graph_arguments(parser, boolean=False)
        parser.add_argument('--name', help='as2euler, as2ham, nas2ham, sat23sat, 3sat23col, '
                                           'identity or cooklevin')
        parser.add_argument('--formula', help='cooklevin: Sigma(1) sentence file (.lso)')
        parser.add_argument('--named', help='cooklevin: library sentence')

    def run(self, data):
        g = data['graph']
        if data['name'] == COOK_LEVIN:
            f = data['sentence']
            ids = identifiers(data, cook_levin_program(f).rho)
            translated = cook_levin_translate(f, g, ids)
            text = format_lg(translated, ids)
            return Report(text.rstrip(), {'graph': text})
        ids = identifiers(data)
        cg = run_reduction(get_reduction(data['name']).program, g, ids)
        text = format_lg(cg.output, derive_output_ids(cg, ids)) + format_cluster_map(cg)
        return Report(text.rstrip(), {'graph': text, 'cluster_map': cg.cluster_map})
