from lph.forms import TilingSystemForm
from lph.formulas import format_formula
from lph.pictures import ts_to_formula

from ._base import LphCommand, Report


class Command(LphCommand):
    help = 'Print the existential monadic sentence defining the pictures a tiling system accepts.'
    form_class = TilingSystemForm

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--ts', help='tiling system file (.ts)')

    def run(self, data):
        text = format_formula(ts_to_formula(data['ts']))
        return Report(text, {'formula': text})
