#!/usr/bin/env python
"""Command-line entry point: cubicl subcommands and Django utilities."""
import os
import sys


def main():
    """Run a cubicl subcommand or a Django administrative task."""
    os.environ.setdefault(
        'DJANGO_SETTINGS_MODULE', 'cubicl_project.settings')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Are you sure it's installed and "
            "available on your PYTHONPATH environment variable? Did you "
            "forget to activate a virtual environment?"
        ) from exc
    from cubicl_project.cli import dispatch
    from cubicl_project.settings import COMMANDS

    if len(sys.argv) > 1 and sys.argv[1] in COMMANDS:
        sys.exit(dispatch(sys.argv[1:]))
    execute_from_command_line(sys.argv)


if __name__ == '__main__':
    main()
