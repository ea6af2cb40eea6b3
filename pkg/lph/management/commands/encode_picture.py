from lph.forms import EncodePictureForm
from lph.graphs import format_lg
from lph.pictures import encode_picture_as_graph

from ._base import LphCommand, Report


class Command(LphCommand):
    help = 'Print the graph encoding of a picture without bits.'
    form_class = EncodePictureForm

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--picture', help='picture file (.pic)')

    def run(self, data):
        g = encode_picture_as_graph(data['picture'])
        text = format_lg(g)
        return Report(text.rstrip(), {'graph': text, 'nodes': len(g), 'edges': len(g.edges)})
