"""
A knot whose connected sum with cl(b) is LCS_n-equivalent to the unknot.

Usage: python manage.py inverse "B2: 1 1 1" --level 3
"""
from src.braids.models.codecs import parse_braid
from src.braids_cli.management.base import BraidCommand


class Command(BraidCommand):
    help = 'LCS_n inverse of a knot given as a braid'

    def add_command_arguments(self, parser):
        parser.add_argument('braid', help='Braid with a knot closure')
        parser.add_argument('--level', type=int, required=True, help='Series level n')

    def run(self, **options):
        result = self.service.inverse(parse_braid(options['braid']), options['level'])
        self.emit([('braid', result.text), ('strands', result.strands)], text=result.text)
