"""
Rewrite a 3-strand braid into letters σ1, σ2^{-1} modulo DS_n(P_3).

Usage: python manage.py rewrite_ds --level 2 --braid "B3: 2 -1"
"""
from src.braids.models.codecs import format_expr, parse_braid
from src.braids_cli.management.base import BraidCommand


class Command(BraidCommand):
    help = 'Rewrite into {a, B} by inserting certified DS_n(P_3) elements'

    def add_command_arguments(self, parser):
        parser.add_argument('--level', type=int, required=True)
        parser.add_argument('--braid', required=True, help='Braid on 3 strands')

    def run(self, **options):
        rewrite = self.service.rewrite_ds(parse_braid(options['braid']), options['level'])
        pairs = [
            ('source', rewrite.source.text),
            ('word', rewrite.word.text),
            ('insertions', len(rewrite.insertions)),
        ]
        if rewrite.difference is not None:
            pairs.append(('difference', format_expr(rewrite.difference.certificate)))
        self.emit(pairs)
