"""
Apply Markov moves to a braid in the order given.

Usage: python manage.py markov "B2: 1 1 1" --move "stabilize -1" --move "conjugate B3: 2"
"""
from src.braids.models.codecs import parse_braid, parse_move
from src.braids_cli.management.base import BraidCommand


class Command(BraidCommand):
    help = 'Conjugate, stabilize or destabilize a braid; the closure is unchanged'

    def add_command_arguments(self, parser):
        parser.add_argument('braid', help='Braid word')
        parser.add_argument(
            '--move',
            action='append',
            default=[],
            help='"conjugate B<k>: ...", "stabilize 1", "stabilize -1" or "destabilize"; repeatable',
        )

    def run(self, **options):
        moves = [parse_move(text) for text in options['move']]
        result = self.service.markov(parse_braid(options['braid']), moves)
        self.emit([('braid', result.text), ('moves', len(moves))], text=result.text)
