#!/usr/bin/env python
"""
Single entry point over the management commands:

    python -m lph.cli eval --graph g.lg --named 3colorable

Subcommand names use dashes (verify-reduction, gen-ids, ...) and map to
the command modules in lph/management/commands. Exit status: 0 for true
or success, 1 for false, 2 for input and execution errors.
"""
import importlib
import os
import sys

COMMANDS = (
    'eval', 'classify', 'run', 'arbitrate', 'reduce', 'verify-reduction', 'oracle',
    'tiling', 'ts2formula', 'encode-picture', 'translate-formula', 'gen-ids', 'enumerate',
)
USAGE_STATUS = 2


def _setup():
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'local_hierarchy.settings')
    import django
    from django.apps import apps
    if not apps.ready:
        django.setup()


def run_cli(argv, stdout=None, stderr=None):
    """Run one subcommand; returns its exit status instead of exiting."""
    stderr = stderr or sys.stderr
    if not argv or argv[0] not in COMMANDS:
        stderr.write(f'usage: lph {{{",".join(COMMANDS)}}} [options]\n')
        return USAGE_STATUS
    _setup()
    name, rest = argv[0], list(argv[1:])
    module = importlib.import_module(f'lph.management.commands.{name.replace("-", "_")}')
    command = module.Command(stdout=stdout, stderr=stderr)
    try:
        command.run_from_argv(['lph', name, *rest])
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_STATUS
    return 0


if __name__ == '__main__':
    sys.exit(run_cli(sys.argv[1:]))
