#!/usr/bin/env python
"""
Input validation for the management commands. Every command binds its
parsed options to one of these forms; file arguments are read and parsed
while cleaning, so `cleaned_data` holds graphs, formulas and pictures
instead of paths.
"""
from django import forms

from .evaluator import STRATEGIES
from .exceptions import LphError
from .games import ADAM, EVE
from .graphs import ATLAS_MAX_NODES, is_bit_string, parse_lg
from .library import LIBRARY, named_formula
from .oracles import parse_property_name
from .parser import parse_formula
from .pictures import parse_picture, parse_tiling_system
from .programs import get_program
from .reductions import REDUCTIONS
from .runtime import parse_dtm

COOK_LEVIN = 'cooklevin'
SCHEDULERS = ('sequential', 'reversed', 'threads')


def _choices(names):
    return [(name, name) for name in names]


def read_input(path):
    """Contents of a text file, or a ValidationError naming the path."""
    try:
        with open(path, encoding='utf-8') as handle:
            return handle.read()
    except OSError as exc:
        raise forms.ValidationError(f'cannot read {path}: {exc.strerror}')


def parse_with(parser, path, *args):
    """Read `path` and parse it, turning toolkit errors into ValidationErrors."""
    try:
        return parser(read_input(path), *args)
    except LphError as exc:
        raise forms.ValidationError(f'{path}: {exc}')


class FormulaMixin:
    """
    A sentence given either as a .lso file (`formula`) or by library name
    (`named`), exactly one of the two.
    """

    def clean_formula(self):
        path = self.cleaned_data.get('formula')
        return parse_with(parse_formula, path) if path else None

    def clean_named(self):
        name = self.cleaned_data.get('named')
        return named_formula(name) if name else None

    def sentence(self, cleaned):
        given = [f for f in (cleaned.get('formula'), cleaned.get('named')) if f is not None]
        if len(given) != 1:
            raise forms.ValidationError('give exactly one of --formula and --named')
        return given[0]


class SeedForm(forms.Form):
    seed = forms.IntegerField(required=False)
    jobs = forms.IntegerField(required=False, min_value=1)


class EvalForm(FormulaMixin, forms.Form):
    """Evaluate a sentence on a graph or on a picture."""
    graph = forms.CharField(required=False)
    picture = forms.CharField(required=False)
    formula = forms.CharField(required=False)
    named = forms.ChoiceField(required=False, choices=_choices(LIBRARY))
    strategy = forms.ChoiceField(required=False, choices=_choices(STRATEGIES))

    def clean_graph(self):
        path = self.cleaned_data.get('graph')
        return parse_with(parse_lg, path)[0] if path else None

    def clean_picture(self):
        path = self.cleaned_data.get('picture')
        return parse_with(parse_picture, path) if path else None

    def clean(self):
        cleaned = super().clean()
        if (cleaned.get('graph') is None) == (cleaned.get('picture') is None):
            raise forms.ValidationError('give exactly one of --graph and --picture')
        cleaned['sentence'] = self.sentence(cleaned)
        return cleaned


class ClassifyForm(FormulaMixin, forms.Form):
    formula = forms.CharField(required=False)
    named = forms.ChoiceField(required=False, choices=_choices(LIBRARY))

    def clean(self):
        cleaned = super().clean()
        cleaned['sentence'] = self.sentence(cleaned)
        return cleaned


class GraphForm(SeedForm):
    """
    A graph file plus the identifiers to run it with: the ones declared
    in the file, else seeded small `rho`-locally unique ones.
    """
    graph = forms.CharField()
    rho = forms.IntegerField(required=False, min_value=1)
    boolean = forms.BooleanField(required=False)

    def boolean_labels(self, cleaned):
        return bool(cleaned.get('boolean'))

    def clean(self):
        cleaned = super().clean()
        path = cleaned.get('graph')
        if path:
            g, ids = parse_with(parse_lg, path, self.boolean_labels(cleaned))
            cleaned['graph'], cleaned['ids'] = g, ids
        return cleaned


class ProgramMixin:
    """A reference program by name (`program`) or a .dtm machine (`machine`)."""

    def clean_program(self):
        name = self.cleaned_data.get('program')
        if not name:
            return None
        try:
            return get_program(name)
        except LphError as exc:
            raise forms.ValidationError(str(exc))

    def clean_machine(self):
        path = self.cleaned_data.get('machine')
        return parse_with(parse_dtm, path) if path else None


class RunForm(ProgramMixin, GraphForm):
    program = forms.CharField(required=False)
    machine = forms.CharField(required=False)
    certs = forms.CharField(required=False)
    scheduler = forms.ChoiceField(required=False, choices=_choices(SCHEDULERS))
    trace = forms.BooleanField(required=False)

    def clean_certs(self):
        """node=c1#c2 pairs separated by commas."""
        text = self.cleaned_data.get('certs') or ''
        certs = {}
        for pair in filter(None, text.split(',')):
            node, sep, value = pair.partition('=')
            if not sep or not is_bit_string(value.replace('#', '')):
                raise forms.ValidationError(f'bad certificate entry {pair!r}')
            certs[node] = value
        return certs

    def clean(self):
        cleaned = super().clean()
        if (cleaned.get('program') is None) == (cleaned.get('machine') is None):
            raise forms.ValidationError('give exactly one of --program and --machine')
        return cleaned


class ArbitrateForm(FormulaMixin, ProgramMixin, GraphForm):
    """
    A certificate game: either an arbiter with explicit game parameters,
    or a sentence whose compiled arbiter brings its own.
    """
    program = forms.CharField(required=False)
    machine = forms.CharField(required=False)
    formula = forms.CharField(required=False)
    named = forms.ChoiceField(required=False, choices=_choices(LIBRARY))
    level = forms.IntegerField(required=False, min_value=0)
    player = forms.ChoiceField(required=False, choices=_choices((EVE, ADAM)))
    radius = forms.IntegerField(required=False, min_value=0)
    poly = forms.CharField(required=False)
    cap = forms.IntegerField(required=False, min_value=0)
    budget = forms.IntegerField(required=False, min_value=1)

    def clean_poly(self):
        text = self.cleaned_data.get('poly')
        if not text:
            return (0, 1)
        try:
            coefficients = tuple(int(c) for c in text.split(','))
        except ValueError:
            raise forms.ValidationError('--poly takes comma-separated integer coefficients')
        if any(c < 0 for c in coefficients):
            raise forms.ValidationError('coefficients must be non-negative')
        return coefficients

    def clean(self):
        cleaned = super().clean()
        arbiters = [k for k in ('program', 'machine', 'formula', 'named') if cleaned.get(k) is not None]
        if len(arbiters) != 1:
            raise forms.ValidationError(
                'give exactly one of --program, --machine, --formula and --named'
            )
        if cleaned.get('formula') is not None or cleaned.get('named') is not None:
            cleaned['sentence'] = self.sentence(cleaned)
        elif cleaned.get('level') is None:
            raise forms.ValidationError('--level is required with an explicit arbiter')
        return cleaned


class ReduceForm(FormulaMixin, GraphForm):
    name = forms.ChoiceField(choices=_choices([*REDUCTIONS, COOK_LEVIN]))
    formula = forms.CharField(required=False)
    named = forms.ChoiceField(required=False, choices=_choices(LIBRARY))

    def boolean_labels(self, cleaned):
        name = cleaned.get('name')
        return name in REDUCTIONS and REDUCTIONS[name].boolean_input

    def clean(self):
        cleaned = super().clean()
        if cleaned.get('name') == COOK_LEVIN:
            cleaned['sentence'] = self.sentence(cleaned)
        return cleaned


class VerifyReductionForm(SeedForm):
    name = forms.ChoiceField(choices=_choices(REDUCTIONS))
    max_nodes = forms.IntegerField(min_value=1, max_value=ATLAS_MAX_NODES)


class OracleForm(GraphForm):
    name = forms.CharField()
    k = forms.IntegerField(required=False, min_value=0)

    def clean_name(self):
        name = self.cleaned_data['name']
        try:
            parse_property_name(name)
        except LphError as exc:
            raise forms.ValidationError(str(exc))
        return name

    def boolean_labels(self, cleaned):
        return (cleaned.get('name') or '').strip().lower() == 'satgraph'


class PictureMixin:

    def clean_picture(self):
        path = self.cleaned_data.get('picture')
        return parse_with(parse_picture, path) if path else None


class TilingForm(PictureMixin, forms.Form):
    ts = forms.CharField()
    picture = forms.CharField()

    def clean_ts(self):
        return parse_with(parse_tiling_system, self.cleaned_data['ts'])


class TilingSystemForm(forms.Form):
    ts = forms.CharField()

    def clean_ts(self):
        return parse_with(parse_tiling_system, self.cleaned_data['ts'])


class EncodePictureForm(PictureMixin, forms.Form):
    picture = forms.CharField()


class TranslateFormulaForm(PictureMixin, forms.Form):
    formula = forms.CharField()
    picture = forms.CharField(required=False)

    def clean_formula(self):
        return parse_with(parse_formula, self.cleaned_data['formula'])


class GenIdsForm(GraphForm):
    pass


class EnumerateForm(forms.Form):
    max_nodes = forms.IntegerField(min_value=1, max_value=ATLAS_MAX_NODES)
    labels = forms.CharField(required=False)

    def clean_labels(self):
        """Comma-separated bit strings; empty means the empty label only."""
        text = self.cleaned_data.get('labels')
        if not text:
            return ('',)
        labels = tuple(label.strip() for label in text.split(','))
        for label in labels:
            if not is_bit_string(label):
                raise forms.ValidationError(f'{label!r} is not a bit string')
        return labels
