import argparse
import sys

from django.core.management.base import BaseCommand

from lph.cli import COMMANDS, run_cli


class Command(BaseCommand):
    help = 'Dispatch to one of the toolkit commands, e.g. `manage.py lph oracle --name eulerian ...`.'

    def add_arguments(self, parser):
        parser.add_argument('subcommand', choices=COMMANDS)
        parser.add_argument('rest', nargs=argparse.REMAINDER)

    def handle(self, *args, **options):
        status = run_cli([options['subcommand'], *options['rest']],
                         stdout=self.stdout, stderr=self.stderr)
        if status:
            sys.exit(status)
