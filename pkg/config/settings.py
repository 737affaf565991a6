"""
Django settings for the braid-series toolkit.

The project has no web surface: Django supplies settings, logging
configuration and the management-command CLI (``python manage.py ...``).
All inputs are explicit; nothing is read from the environment.
"""

from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Only used by Django internals; no sessions or signing happen here.
SECRET_KEY = 'braid-series-local-key'

DEBUG = False

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    # Our apps
    'src.braids_cli',
]

MIDDLEWARE = []


# Database
# No persistence: every computation is a pure function of its inputs.
DATABASES = {}


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Default primary key field type

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Logging configuration

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': False,
        },
        'braids': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': False,
        },
    },
}


# Braid toolkit specific settings

BRAIDS_SETTINGS = {
    'DEFAULT_SEED': 0,
    'BASE_BOUND': 12,              # longest {a,B} core tried by the level-1 search
    'W_SERIES_MAX': 6,             # truncation order of log-Jones series
    'DESCENT_STEP_FACTOR': 4,      # crossing-switch budget = factor * word length
    'STATE_SUM_MAX_CROSSINGS': 12, # 2^c bracket oracle limit
    'MAX_REDUCTION_STEPS': 10000,  # relator reduction budget
    'FAMILY_PRIMALITY_ROUNDS': 4,  # extra insertions tried before giving up on primality
}
