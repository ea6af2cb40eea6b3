from lph.forms import VerifyReductionForm
from lph.sweeps import verify_reduction

from ._base import Report, VerdictCommand


class Command(VerdictCommand):
    help = 'Check a reduction against the property oracles on every small instance.'
    form_class = VerifyReductionForm

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--name', help='reduction to check')
        parser.add_argument('--max-nodes', type=int, dest='max_nodes', default=4,
                            help='largest graphs enumerated (at most 7)')
        parser.add_argument('--seed', type=int, help='seed for generated identifiers')
        parser.add_argument('--jobs', type=int, help='worker threads')

    def run(self, data):
        report = verify_reduction(data['name'], data['max_nodes'], data.get('seed'),
                                  data.get('jobs'))
        return Report(report.summary(), report.as_dict(), report.ok)
