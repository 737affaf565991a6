"""
The DS_n(P_3) word families, one certified word per form.

Usage: python manage.py ds3_words --level 2
"""
from src.braids.algebra.ds3 import PRIMARY_FORMS
from src.braids.models.codecs import format_expr
from src.braids.models.schemas import Ds3Form
from src.braids_cli.management.base import BraidCommand


class Command(BraidCommand):
    help = 'Words in σ1 and σ2^{-1} of each DS_n(P_3) form'

    def add_command_arguments(self, parser):
        parser.add_argument('--level', type=int, required=True)
        parser.add_argument('--certificates', action='store_true', help='Also print the certificates')

    def run(self, **options):
        words = self.service.ds3_words(options['level'])
        pairs = []
        for form in PRIMARY_FORMS:
            name = Ds3Form(form).value
            pairs.append((name, words[form].word.text))
            if options['certificates']:
                pairs.append((f'{name}.certificate', format_expr(words[form].certificate)))
        self.emit(pairs)
