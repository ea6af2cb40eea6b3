from lph.evaluator import evaluate, satisfies
from lph.forms import EvalForm
from lph.formulas import format_formula
from lph.pictures import picture_structure

from ._base import Report, VerdictCommand


class Command(VerdictCommand):
    help = 'Evaluate a sentence on a graph (.lg) or on a picture (.pic).'
    form_class = EvalForm

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--graph', help='graph file (.lg), labels over {0,1}')
        parser.add_argument('--picture', help='picture file (.pic)')
        parser.add_argument('--formula', help='sentence file (.lso)')
        parser.add_argument('--named', help='library sentence, e.g. 3colorable')
        parser.add_argument('--strategy', help='second-order search: branching or enumerate')

    def run(self, data):
        f = data['sentence']
        strategy = data.get('strategy') or None
        if data['graph'] is not None:
            value = satisfies(data['graph'], f, strategy=strategy)
        else:
            value = evaluate(picture_structure(data['picture']), f, strategy=strategy)
        return Report(verdict=value, record={'formula': format_formula(f)})
