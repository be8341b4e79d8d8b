import time

from django.core.management.base import BaseCommand, CommandError

from characters.exceptions import CubiclError
from cubicl_project.settings import EXIT_CODES

from ..utils import build_manifest, write_output

INVALID = '{}: {}'


def first_error(errors):
    while isinstance(errors, (dict, list)):
        errors = (next(iter(errors.values())) if isinstance(errors, dict)
                  else errors[0])
    return errors


class CubiclCommand(BaseCommand):
    """Validates options through serializer_class, then calls run."""

    requires_system_checks = []
    serializer_class = None
    argv = ()

    def add_arguments(self, parser):
        parser.add_argument('--q', type=int, required=True)
        parser.add_argument('--out')

    def validated(self, options):
        serializer = self.serializer_class(data={
            key: value for key, value in options.items()
            if value is not None})
        if not serializer.is_valid():
            error = first_error(serializer.errors)
            raise CommandError(
                INVALID.format(error.code, error),
                returncode=EXIT_CODES['VALIDATION'])
        return serializer.validated_data

    def handle(self, *args, **options):
        data = self.validated(options)
        self.started = time.monotonic()
        try:
            self.run(data, options)
        except CubiclError as error:
            raise CommandError(
                INVALID.format(error.name, error.message),
                returncode=EXIT_CODES['VALIDATION'])

    def run(self, data, options):
        raise NotImplementedError

    @property
    def runtime_ms(self):
        return int((time.monotonic() - self.started) * 1000)

    def emit(self, tower, content, report, options, cutoffs=None):
        manifest = build_manifest(
            tower, self.argv, report, self.runtime_ms, cutoffs)
        write_output(content, options.get('out'), self.stdout, manifest,
                     self.stderr)

    def fail(self, message):
        raise CommandError(message, returncode=EXIT_CODES['VERIFY'])
