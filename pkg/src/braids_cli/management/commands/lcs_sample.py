"""
Draw a certified element of LCS_n(P_k) or DS_n(P_k).

Usage: python manage.py lcs_sample --strands 3 --level 2 --seed 7
"""
from src.braids.models.codecs import format_certified
from src.braids.models.schemas import Series
from src.braids_cli.management.base import BraidCommand


class Command(BraidCommand):
    help = 'Seeded random element of a pure braid series with its certificate'

    def add_command_arguments(self, parser):
        parser.add_argument('--strands', type=int, required=True)
        parser.add_argument('--level', type=int, required=True)
        parser.add_argument('--series', choices=[s.value for s in Series], default=Series.LCS.value)

    def run(self, **options):
        element = self.service.sample(options['strands'], options['level'], Series(options['series']))
        self.emit(format_certified(element).items())
