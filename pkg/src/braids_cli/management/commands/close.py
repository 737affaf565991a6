"""
Close a braid into a link diagram and print its PD and Gauss codes.

Usage: python manage.py close "B2: 1 1 1"
"""
from src.braids.models.codecs import parse_braid
from src.braids_cli.management.base import BraidCommand


class Command(BraidCommand):
    help = 'PD code, Gauss code and components of a braid closure'

    def add_command_arguments(self, parser):
        parser.add_argument('braid', help='Braid word')

    def run(self, **options):
        d = self.service.close(parse_braid(options['braid']))
        gauss = " ; ".join(" ".join(str(c) for c in component) for component in d.gauss)
        self.emit([
            ('braid', d.word.text),
            ('crossings', d.crossing_count),
            ('components', d.component_count),
            ('writhe', d.writhe),
            ('pd', d.pd_text),
            ('gauss', gauss),
        ])
