"""
Decide whether two braid words are the same element of B_k.

Usage: python manage.py equal "B3: 1 2 1" "B3: 2 1 2"
"""
from src.braids.models.codecs import parse_braid
from src.braids_cli.management.base import BraidCommand, boolean


class Command(BraidCommand):
    help = 'Compare two braid words through their normal forms'

    def add_command_arguments(self, parser):
        parser.add_argument('first', help='Braid word')
        parser.add_argument('second', help='Braid word on the same number of strands')

    def run(self, **options):
        u = parse_braid(options['first'])
        v = parse_braid(options['second'])
        verdict = boolean(self.service.equal(u, v))
        self.emit(
            [
                ('equal', verdict),
                ('first_key', self.service.normalize(u).key),
                ('second_key', self.service.normalize(v).key),
            ],
            text=verdict,
        )
