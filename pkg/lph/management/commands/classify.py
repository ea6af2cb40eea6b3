from lph.compiler import required_rho
from lph.forms import ClassifyForm
from lph.formulas import classify, nesting_radius, split_local, split_prefix

from ._base import LphCommand, Report


class Command(LphCommand):
    help = 'Print the smallest fragment of the local hierarchy containing a sentence.'
    form_class = ClassifyForm

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--formula', help='sentence file (.lso)')
        parser.add_argument('--named', help='library sentence, e.g. 3colorable')

    def run(self, data):
        f = data['sentence']
        tag = classify(f)
        record = {'kind': tag.kind, 'level': tag.level, 'monadic': tag.monadic}
        lines = [str(tag)]
        if tag.is_local:
            _, matrix = split_prefix(f)
            _, body = split_local(matrix)
            record['radius'] = nesting_radius(body)
            record['rho'] = required_rho(f)
            lines.append(f'radius {record["radius"]}, identifiers {record["rho"]}-locally unique')
        return Report('\n'.join(lines), record)
