from lph.forms import TilingForm
from lph.pictures import ts_accepts

from ._base import Report, VerdictCommand


class Command(VerdictCommand):
    help = 'Decide whether a tiling system accepts a picture.'
    form_class = TilingForm

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--ts', help='tiling system file (.ts)')
        parser.add_argument('--picture', help='picture file (.pic)')

    def run(self, data):
        p = data['picture']
        return Report(verdict=ts_accepts(data['ts'], p),
                      record={'height': p.height, 'width': p.width})
