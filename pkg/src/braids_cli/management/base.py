"""
Shared plumbing for the braid management commands.

Every command accepts ``--format text|record`` and ``--seed``, turns domain
errors into a one-line CommandError with exit status 1, and writes results
to stdout only.
"""

from typing import Iterable, List, Optional, Tuple

from django.core.management.base import BaseCommand, CommandError

from src.braids.exceptions import BraidError
from src.braids.models.codecs import format_record
from src.braids.services.braid_service import BraidService


Pairs = List[Tuple[str, object]]


class BraidCommand(BaseCommand):
    """Base class; subclasses implement ``add_command_arguments`` and ``run``."""

    def add_arguments(self, parser):
        parser.add_argument(
            '--format',
            dest='output_format',
            choices=['text', 'record'],
            default='text',
            help='Human-readable text or key=value records',
        )
        parser.add_argument(
            '--seed',
            type=int,
            default=None,
            help='Seed for every sampled value (defaults to BRAIDS_SETTINGS DEFAULT_SEED)',
        )
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def handle(self, *args, **options):
        self.output_format = options['output_format']
        self.service = BraidService(seed=options['seed'])
        try:
            self.run(**options)
        except BraidError as exc:
            raise CommandError(str(exc), returncode=1) from exc

    def run(self, **options):
        raise NotImplementedError

    def emit(self, pairs: Iterable[Tuple[str, object]], text: Optional[str] = None) -> None:
        """Write the result as records, or as ``text`` (default ``key: value`` lines)."""
        pairs = list(pairs)
        if self.output_format == 'record':
            self.stdout.write(format_record(pairs))
        elif text is not None:
            self.stdout.write(text)
        else:
            self.stdout.write("\n".join(f"{key}: {value}" for key, value in pairs))


def boolean(value: bool) -> str:
    return "true" if value else "false"
