"""
Invariant battery of a braid closure.

Usage: python manage.py invariants "B2: 1 1 1"
"""
from src.braids.models.codecs import parse_braid
from src.braids_cli.management.base import BraidCommand


def conway_text(coefficients) -> str:
    terms = []
    for degree, c in enumerate(coefficients):
        if c:
            terms.append(f"{c}" if degree == 0 else f"{c}*z^{degree}")
    return " + ".join(terms) or "0"


class Command(BraidCommand):
    help = 'Jones, Alexander, Conway, determinant and low-order finite-type invariants'

    def add_command_arguments(self, parser):
        parser.add_argument('braid', help='Braid word')

    def run(self, **options):
        b = parse_braid(options['braid'])
        result, probe = self.service.invariants(b)
        pairs = [
            ('braid', b.text),
            ('components', result.components),
            ('jones', result.jones.text),
        ]
        if probe is not None:
            pairs += [
                ('alexander', result.alexander.text),
                ('conway', " ".join(map(str, result.conway))),
                ('conway_poly', conway_text(result.conway)),
                ('determinant', result.determinant),
                ('w2', probe.w2),
                ('w3', probe.w3),
                ('a2', probe.a2),
                ('a3', probe.a3),
                ('a4', probe.a4),
            ]
        self.emit(pairs)
