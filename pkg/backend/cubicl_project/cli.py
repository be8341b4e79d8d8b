"""The cubicl subcommands on top of Django management commands.

Exit codes: 0 on success, 2 on invalid input, 3 when a verification
fails, 64 on a usage error.
"""
import logging
import os
import sys

import django
from django.core.management import load_command_class
from django.core.management.base import CommandError

logger = logging.getLogger(__name__)

PROG = 'cubicl'
UNKNOWN_COMMAND = 'Неизвестная команда: {}. Доступны: {}'
USAGE = 'Использование: cubicl <команда> [параметры]'


def dispatch(argv, stdout=None, stderr=None):
    os.environ.setdefault(
        'DJANGO_SETTINGS_MODULE', 'cubicl_project.settings')
    django.setup()
    from django.conf import settings

    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    codes = settings.EXIT_CODES
    if not argv:
        stderr.write(USAGE + '\n')
        return codes['USAGE']
    name, *arguments = argv
    if name not in settings.COMMANDS:
        stderr.write(UNKNOWN_COMMAND.format(
            name, ', '.join(settings.COMMANDS)) + '\n')
        return codes['USAGE']
    command = load_command_class('moments', name)
    command.argv = tuple(argv)
    parser = command.create_parser(PROG, name)
    try:
        options = parser.parse_args(arguments)
    except CommandError as error:
        stderr.write(f'{error}\n')
        return codes['USAGE']
    try:
        command.execute(**vars(options), stdout=stdout, stderr=stderr)
    except CommandError as error:
        stderr.write(f'{error}\n')
        return error.returncode
    return codes['OK']


def main():
    sys.exit(dispatch(sys.argv[1:]))
