from lph.evaluator import evaluate, satisfies
from lph.forms import TranslateFormulaForm
from lph.formulas import format_formula
from lph.pictures import encode_picture_as_graph, picture_structure, translate_picture_formula

from ._base import LphCommand, Report


class Command(LphCommand):
    help = 'Translate a picture sentence into a sentence on picture encodings.'
    form_class = TranslateFormulaForm

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--formula', help='picture sentence file (.lso)')
        parser.add_argument('--picture', help='also evaluate both sentences on this picture')

    def run(self, data):
        f = data['formula']
        translated = translate_picture_formula(f)
        text = format_formula(translated)
        record = {'formula': text}
        lines = [text]
        p = data.get('picture')
        if p is not None:
            record['on_picture'] = evaluate(picture_structure(p), f)
            record['on_encoding'] = satisfies(encode_picture_as_graph(p), translated)
            lines.append(f'picture: {str(record["on_picture"]).lower()}, '
                         f'encoding: {str(record["on_encoding"]).lower()}')
        return Report('\n'.join(lines), record)
