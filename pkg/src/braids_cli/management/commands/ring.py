"""
Group-ring operations on singular braids, certificates and relators.

Usage:
    python manage.py ring resolve "S3: 1 x2 -1"
    python manage.py ring ideal-form "S3: x1 x2"
    python manage.py ring double-points --factor "B3: 1 1" --tail "B3: 2"
    python manage.py ring expand --certificate "(c (w 3 1 1) (w 3 2 2))"
    python manage.py ring reduce-relator --certificate "(w 2 1 1)" --certificate "(w 2 1 1)" --level 2
"""
from django.core.management.base import CommandError

from src.braids.algebra.group_ring import augmentation_product, expand_ideal_form
from src.braids.models.codecs import format_ring, parse_braid, parse_singular
from src.braids.models.schemas import BraidWord, Relator, Series
from src.braids_cli.management.base import BraidCommand, boolean


ACTIONS = ['resolve', 'ideal-form', 'double-points', 'expand', 'reduce-relator']


class Command(BraidCommand):
    help = 'Resolve double points, factor into the augmentation ideal, expand commutators, reduce relators'

    def add_command_arguments(self, parser):
        parser.add_argument('action', choices=ACTIONS)
        parser.add_argument('singular', nargs='?', help='Singular braid word for resolve and ideal-form')
        parser.add_argument('--factor', action='append', default=[], help='Braid factor x_i; repeatable')
        parser.add_argument('--tail', help='Braid multiplied on the right')
        parser.add_argument('--certificate', action='append', default=[], help='Certificate s-expression; repeatable')
        parser.add_argument('--series', choices=[s.value for s in Series], default=Series.LCS.value)
        parser.add_argument('--level', type=int, default=2, help='Target order n for reduce-relator')

    def run(self, **options):
        action = options['action']
        if action in ('resolve', 'ideal-form') and not options['singular']:
            raise CommandError(f"ring {action} needs a singular braid word", returncode=2)
        if action in ('expand', 'reduce-relator') and not options['certificate']:
            raise CommandError(f"ring {action} needs at least one --certificate", returncode=2)
        handler = {
            'resolve': self._resolve,
            'ideal-form': self._ideal_form,
            'double-points': self._double_points,
            'expand': self._expand,
            'reduce-relator': self._reduce_relator,
        }[action]
        self.emit(handler(options))

    def _resolve(self, options):
        s = parse_singular(options['singular'])
        return [('singular', s.text), ('ring', format_ring(self.service.resolve(s)))]

    def _ideal_form(self, options):
        s = parse_singular(options['singular'])
        form = self.service.ideal_form(s)
        return [
            ('singular', s.text),
            ('factors', " ; ".join(f.text for f in form.factors)),
            ('tail', form.tail.text),
            ('verified', boolean(expand_ideal_form(form) == self.service.resolve(s))),
        ]

    def _double_points(self, options):
        xs = [parse_braid(text) for text in options['factor']]
        tail = parse_braid(options['tail']) if options['tail'] else None
        words = self.service.double_points(xs, tail)
        pairs = [('terms', len(words))]
        pairs += [(f'term.{i}', f"{item.sign:+d} {item.word.text}") for i, item in enumerate(words)]
        return pairs

    def _expand(self, options):
        x = self.service.certified(options['certificate'][0], Series(options['series']))
        expansion = self.service.expand(x)
        return [
            ('element', expansion.element.text),
            ('level', expansion.level),
            ('terms', len(expansion.terms)),
            ('min_factors', expansion.min_factors),
            ('verified', boolean(expansion.ring_sum() == augmentation_product([expansion.element]))),
        ]

    def _reduce_relator(self, options):
        series = Series(options['series'])
        xs = tuple(self.service.certified(text, series) for text in options['certificate'])
        strands = xs[0].strands
        y = parse_braid(options['tail']) if options['tail'] else BraidWord.empty(strands)
        trace = self.service.reduce_relator(Relator(strands=strands, xs=xs, y=y), options['level'])
        return [
            ('order', trace.source.order),
            ('level', trace.level),
            ('steps', len(trace.steps)),
            ('emitted', len(trace.emitted)),
            ('terminals', len(trace.terminals)),
            ('complete', boolean(trace.complete)),
            ('replayed', boolean(self.service.replay(trace))),
        ]
