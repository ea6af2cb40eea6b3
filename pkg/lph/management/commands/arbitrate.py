from lph.compiler import compile_formula_to_arbiter
from lph.forms import ArbitrateForm
from lph.games import EVE, GameSpec, arbitrate

from ._base import Report, VerdictCommand, add_graph_arguments, identifiers


class Command(VerdictCommand):
    help = 'Decide a certificate game on a graph by exhaustive search.'
    form_class = ArbitrateForm

    def add_arguments(self, parser):
        super().add_arguments(parser)
        add_graph_arguments(parser, boolean=False)
        parser.add_argument('--program', help='arbiter: reference program')
        parser.add_argument('--machine', help='arbiter: distributed machine file (.dtm)')
        parser.add_argument('--formula', help='sentence file (.lso), played via its compiled arbiter')
        parser.add_argument('--named', help='library sentence, played via its compiled arbiter')
        parser.add_argument('--level', type=int, help='number of certificate quantifiers')
        parser.add_argument('--player', help='first player, Eve or Adam')
        parser.add_argument('--radius', type=int, help='radius r of the certificate bound')
        parser.add_argument('--poly', help='coefficients of the bound polynomial, e.g. 0,1')
        parser.add_argument('--cap', type=int, help='cap on certificate lengths')
        parser.add_argument('--budget', type=int, help='search step budget')

    def run(self, data):
        if 'sentence' in data:
            arbiter = compile_formula_to_arbiter(data['sentence'])
            prog, spec = arbiter.program, arbiter.spec
        else:
            prog = data['program'] or data['machine']
            spec = GameSpec(
                level=data['level'],
                first_player=data.get('player') or EVE,
                cert_radius=data.get('radius') or 0,
                cert_poly=data['poly'],
                cert_cap=data.get('cap'),
                rho=data.get('rho') or 1,
            )
        ids = identifiers(data, spec.rho)
        value = arbitrate(prog, data['graph'], ids, spec, budget=data.get('budget'))
        record = {'level': spec.level, 'first_player': spec.first_player, 'ids': ids}
        return Report(f'{spec.level} quantifier(s), {spec.first_player} first', record, value)
