"""
Slide y around cl(x y t_k) until it becomes a connected summand.

Usage: python manage.py slide --certificate "(c (w 2 1 1) (w 2 1 1))" --braid "B2: 1 1"
"""
from src.braids.models.codecs import format_expr, parse_braid
from src.braids.models.schemas import Series
from src.braids_cli.management.base import BraidCommand


class Command(BraidCommand):
    help = 'Equivalence witnesses of the slide chain, each with a certified mover'

    def add_command_arguments(self, parser):
        parser.add_argument('--certificate', required=True, help='Certificate of x as an s-expression')
        parser.add_argument('--braid', required=True, help='Pure braid y')
        parser.add_argument('--series', choices=[s.value for s in Series], default=Series.LCS.value)

    def run(self, **options):
        x = self.service.certified(options['certificate'], Series(options['series']))
        witnesses = self.service.slide(x, parse_braid(options['braid']))
        pairs = [('witnesses', len(witnesses))]
        for i, witness in enumerate(witnesses):
            pairs += [
                (f'witness.{i}.base', witness.base.text),
                (f'witness.{i}.level', witness.level),
                (f'witness.{i}.mover', format_expr(witness.mover.certificate)),
            ]
        self.emit(pairs)
