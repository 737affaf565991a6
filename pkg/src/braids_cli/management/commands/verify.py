"""
Check identities and run the verification suites.

Usage:
    python manage.py verify --identity braid-relation --seed 4
    python manage.py verify --suite pinning
    python manage.py verify --list
"""
from django.core.management.base import CommandError

from src.braids.identities.registry import IdentityRegistry
from src.braids.services.braid_service import SUITES
from src.braids_cli.management.base import BraidCommand, boolean


class Command(BraidCommand):
    help = 'Verify one identity instance or run a named suite'

    def add_command_arguments(self, parser):
        group = parser.add_mutually_exclusive_group(required=True)
        group.add_argument('--identity', help='Identity id')
        group.add_argument('--suite', choices=SUITES)
        group.add_argument('--list', action='store_true', help='List the identity ids')
        parser.add_argument('--count', type=int, default=3, help='Instances per check in a suite')

    def run(self, **options):
        if options['list']:
            ids = IdentityRegistry.list_identities()
            self.emit([(f'identity.{i}', name) for i, name in enumerate(ids)], text="\n".join(ids))
            return

        if options['identity']:
            report = self.service.verify_identity(options['identity'])
            pairs = [
                ('identity', report.identity_id),
                ('verdict', boolean(report.verdict)),
                ('left', report.left_key),
                ('right', report.right_key),
            ]
            pairs += [(f'parameter.{key}', value) for key, value in sorted(report.parameters.items())]
            self.emit(pairs)
            if not report.verdict:
                raise CommandError(f"Identity {report.identity_id} does not hold", returncode=1)
            return

        report = self.service.run_suite(options['suite'], options['count'])
        pairs = [('suite', report.suite), ('seed', report.seed), ('checks', len(report.checks))]
        pairs += [(f'check.{i}.{c.name}', boolean(c.verdict)) for i, c in enumerate(report.checks)]
        text = "\n".join(
            [f"{'PASS' if c.verdict else 'FAIL'} {c.name} {c.detail}".rstrip() for c in report.checks]
            + [f"{len(report.checks) - len(report.failures)}/{len(report.checks)} passed"]
        )
        self.emit(pairs, text=text)
        if not report.passed:
            raise CommandError(f"{len(report.failures)} checks failed in suite {report.suite}", returncode=1)
