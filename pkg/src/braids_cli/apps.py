from django.apps import AppConfig


class BraidsCliConfig(AppConfig):
    name = 'src.braids_cli'
    verbose_name = 'Braid Series Toolkit'
