"""
Common descendant of two stabilizations of the same braid.

Usage: python manage.py join "B2: 1 1 1" --alpha1 "B2: 1" --sign1 1 --alpha2 "B2:" --sign2 -1
"""
from src.braids.models.codecs import format_move, parse_braid
from src.braids.models.schemas import StabilizationData
from src.braids_cli.management.base import BraidCommand


class Command(BraidCommand):
    help = 'Braid on k+2 strands reached from both α^{-1} b α σ_k^{±1} by Markov moves'

    def add_command_arguments(self, parser):
        parser.add_argument('braid', help='Braid b on k strands')
        parser.add_argument('--alpha1', required=True, help='Conjugator of the first stabilization')
        parser.add_argument('--sign1', type=int, choices=[-1, 1], required=True)
        parser.add_argument('--alpha2', required=True, help='Conjugator of the second stabilization')
        parser.add_argument('--sign2', type=int, choices=[-1, 1], required=True)

    def run(self, **options):
        b = parse_braid(options['braid'])
        c1 = StabilizationData(alpha=parse_braid(options['alpha1']), sign=options['sign1'])
        c2 = StabilizationData(alpha=parse_braid(options['alpha2']), sign=options['sign2'])
        d, first, second = self.service.join(b, c1, c2)
        self.emit([
            ('join', d.text),
            ('first_moves', " ; ".join(format_move(m) for m in first)),
            ('second_moves', " ; ".join(format_move(m) for m in second)),
        ])
