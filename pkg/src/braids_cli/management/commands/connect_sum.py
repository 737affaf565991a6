"""
Connected sum of the knots cl(x t_k) and cl(y t_k) as one braid.

Usage: python manage.py connect_sum "B2: 1 1" "B2: -1 -1"
"""
from src.braids.models.codecs import parse_braid
from src.braids_cli.management.base import BraidCommand


class Command(BraidCommand):
    help = 'Braid on 2k strands closing to cl(x t_k) # cl(y t_k)'

    def add_command_arguments(self, parser):
        parser.add_argument('first', help='Pure braid x')
        parser.add_argument('second', help='Pure braid y')

    def run(self, **options):
        result = self.service.connect_sum(parse_braid(options['first']), parse_braid(options['second']))
        self.emit([('braid', result.text)], text=result.text)
