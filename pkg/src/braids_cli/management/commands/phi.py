"""
The knot cl(p t_k) of a pure braid p.

Usage: python manage.py phi "B3: 1 1 2 2"
"""
from src.braids.models.codecs import parse_braid
from src.braids_cli.management.base import BraidCommand


class Command(BraidCommand):
    help = 'Knot closure p t_k of a pure braid'

    def add_command_arguments(self, parser):
        parser.add_argument('braid', help='Pure braid p')

    def run(self, **options):
        word, d = self.service.phi(parse_braid(options['braid']))
        self.emit([
            ('braid', word.text),
            ('crossings', d.crossing_count),
            ('pd', d.pd_text),
        ])
