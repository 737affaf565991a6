"""
Alternating, reduced, prime diagrams DS_n-equivalent to cl(b).

Usage: python manage.py alternate "B3: 1 1 1 2" --level 2 --count 3
"""
from src.braids.models.codecs import parse_braid
from src.braids.services.braid_service import alternating_checks
from src.braids_cli.management.base import BraidCommand, boolean


class Command(BraidCommand):
    help = 'Family of alternating knots in the DS_n-equivalence class of a knot'

    def add_command_arguments(self, parser):
        parser.add_argument('braid', help='Braid with a knot closure')
        parser.add_argument('--level', type=int, required=True)
        parser.add_argument('--count', type=int, default=1)

    def run(self, **options):
        members = self.service.alternate(parse_braid(options['braid']), options['level'], options['count'])
        pairs = []
        for i, member in enumerate(members):
            pairs += [
                (f'member.{i}.braid', member.word.text),
                (f'member.{i}.crossings', member.word.length),
                (f'member.{i}.pd', member.diagram.pd_text),
            ]
        pairs += [(f'check.{check.name}', boolean(check.verdict)) for check in alternating_checks(members)]
        self.emit(pairs)
