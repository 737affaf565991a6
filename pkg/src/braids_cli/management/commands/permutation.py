"""
Print the permutation a braid induces on its strands.

Usage: python manage.py permutation "B3: 1 2"
"""
from src.braids.models.codecs import parse_braid
from src.braids_cli.management.base import BraidCommand, boolean


class Command(BraidCommand):
    help = 'Strand permutation and cycle type of a braid'

    def add_command_arguments(self, parser):
        parser.add_argument('braid', help='Braid word')

    def run(self, **options):
        w = parse_braid(options['braid'])
        p = self.service.permutation(w)
        cycles = " ".join("(" + " ".join(map(str, c)) + ")" for c in p.cycles())
        self.emit([
            ('image', p.text),
            ('cycles', cycles),
            ('pure', boolean(p.is_identity)),
        ])
