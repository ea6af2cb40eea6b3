"""
Shared plumbing of the lph management commands.

A command binds its options to a form from lph.forms, runs on the cleaned
data and returns a Report. Form errors and toolkit errors become a
CommandError with exit status 2. Verdict commands print `true` or `false`
on the last line and exit with status 1 on `false`.
"""
import json
import sys
from dataclasses import dataclass, field
from typing import Optional

from django.core.management.base import BaseCommand, CommandError

from lph import conf
from lph.exceptions import LphError
from lph.graphs import generate_small_ids

ERROR_STATUS = 2
FALSE_STATUS = 1


@dataclass
class Report:
    text: str = ''
    record: dict = field(default_factory=dict)
    verdict: Optional[bool] = None


def add_graph_arguments(parser, boolean=True):
    parser.add_argument('--graph', help='graph file (.lg)')
    parser.add_argument('--rho', type=int, help='locality radius of generated identifiers')
    parser.add_argument('--seed', type=int, help='seed for generated identifiers')
    if boolean:
        parser.add_argument('--boolean', action='store_true',
                            help='labels are Boolean formulas instead of bit strings')


def identifiers(data, rho=1):
    """The identifiers declared in the graph file, else seeded small ones."""
    if data.get('ids'):
        return data['ids']
    seed = data.get('seed')
    seed = conf.get('LPH_DEFAULT_SEED') if seed is None else seed
    return generate_small_ids(data['graph'], data.get('rho') or rho, seed)


class LphCommand(BaseCommand):
    form_class = None

    def add_arguments(self, parser):
        parser.add_argument('--json', action='store_true', dest='json',
                            help='print a machine-readable record')

    def validate(self, options):
        form = self.form_class(options)
        if not form.is_valid():
            messages = []
            for name, errors in form.errors.items():
                prefix = '' if name == '__all__' else f'--{name.replace("_", "-")}: '
                messages.extend(prefix + error for error in errors)
            raise CommandError('; '.join(messages), returncode=ERROR_STATUS)
        return form.cleaned_data

    def handle(self, *args, **options):
        data = self.validate(options)
        try:
            report = self.run(data)
        except LphError as exc:
            raise CommandError(f'{type(exc).__name__}: {exc}', returncode=ERROR_STATUS)
        return self.render(report, options.get('json'))

    def run(self, data):
        raise NotImplementedError('subclasses of LphCommand must provide a run() method')

    def render(self, report, as_json):
        if as_json:
            return json.dumps(report.record, sort_keys=True, indent=2)
        return report.text


class VerdictCommand(LphCommand):
    verdict = None

    def render(self, report, as_json):
        self.verdict = report.verdict
        if as_json:
            return json.dumps({**report.record, 'verdict': report.verdict}, sort_keys=True, indent=2)
        lines = [report.text] if report.text else []
        lines.append('true' if report.verdict else 'false')
        return '\n'.join(lines)

    def run_from_argv(self, argv):
        super().run_from_argv(argv)
        if self.verdict is False:
            sys.exit(FALSE_STATUS)
