"""
Print the Garside normal form of a braid as its canonical key.

Usage: python manage.py normalize "B3: 1 2 1"
"""
from src.braids.models.codecs import parse_braid
from src.braids_cli.management.base import BraidCommand


class Command(BraidCommand):
    help = 'Canonical key of a braid word'

    def add_command_arguments(self, parser):
        parser.add_argument('braid', help='Braid word, e.g. "B3: 1 -2 1"')

    def run(self, **options):
        w = parse_braid(options['braid'])
        nf = self.service.normalize(w)
        self.emit(
            [
                ('braid', w.text),
                ('key', nf.key),
                ('infimum', nf.infimum),
                ('canonical_length', nf.canonical_length),
            ],
            text=nf.key,
        )
