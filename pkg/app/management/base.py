import logging
import sys
from functools import partial

from django.core.management.base import BaseCommand, CommandError
from rest_framework.exceptions import ValidationError

from app.exceptions import ClientException
from app.utils.config_util import load_config
from app.utils.constants import MODE

logger = logging.getLogger(__name__)

VALIDATION_ERROR = 1
IO_ERROR = 2


def usage_error(parser, message):
    """Report argument errors with VALIDATION_ERROR instead of argparse's exit code 2."""
    if parser.called_from_command_line:
        parser.print_usage(sys.stderr)
        parser.exit(VALIDATION_ERROR, f'{parser.prog}: error: {message}\n')
    raise CommandError(f'Error: {message}', returncode=VALIDATION_ERROR)


class FormulaTuningCommand(BaseCommand):
    """Maps domain and validation failures to exit code 1 and I/O failures to 2.

    Subclasses implement `run`; any file they write goes through the atomic
    writers in jsonl_util, so a failed run never leaves partial output.
    """
    requires_system_checks = []

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser.error = partial(usage_error, parser)
        return parser

    def add_config_argument(self, parser):
        parser.add_argument('--config', help='Flat TOML run configuration.')

    def add_mode_argument(self, parser, required=True):
        parser.add_argument('--mode', choices=MODE.values(), required=required)

    def add_out_argument(self, parser):
        parser.add_argument('--out', help='Machine-readable output path.')

    def config(self, options):
        return load_config(options.get('config'))

    def handle(self, *args, **options):
        name = self.__module__.rsplit('.', 1)[-1]
        logger.info('Running %s', name)
        try:
            self.run(**options)
        except ClientException as e:
            raise CommandError(e.message, returncode=VALIDATION_ERROR)
        except ValidationError as e:
            raise CommandError(str(e.detail), returncode=VALIDATION_ERROR)
        except OSError as e:
            raise CommandError(f'{e.filename or ""}: {e.strerror or e}'.lstrip(': '), returncode=IO_ERROR)

    def run(self, **options):
        raise NotImplementedError

    def summary(self, message):
        self.stdout.write(self.style.SUCCESS(message))
