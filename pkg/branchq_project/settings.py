"""
Django settings for branchq_project project.

Only the pieces a command-line computation engine needs are kept: there is
no URL configuration, no template layer and no database. Everything
tunable comes from the environment (or a .env file) through
python-decouple.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""

import os
from pathlib import Path

from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = config(
    'SECRET_KEY',
    default='django-insecure-branchq-local-computation-key',
)

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'rest_framework',
    'branchq',
]

# Results are never persisted.
DATABASES = {}


# Internationalization
# https://docs.djangoproject.com/en/4.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Computation engine

# Worker processes used by verify/scan; 1 disables the pool.
BRANCHQ_JOBS = config('BRANCHQ_JOBS', default=os.cpu_count() or 1, cast=int)

# Memo cache cap shared by every generator set. An entry (weight, index, polynomial)
# costs roughly half a kilobyte.
BRANCHQ_MEMO_MB = config('BRANCHQ_MEMO_MB', default=256, cast=int)
BRANCHQ_MEMO_ENTRIES = BRANCHQ_MEMO_MB * 2048

BRANCHQ_RANK_GUARD = config('BRANCHQ_RANK_GUARD', default=8, cast=int)

# Largest certificate value the brute-force oracle accepts.
BRANCHQ_ORACLE_BOUND = config('BRANCHQ_ORACLE_BOUND', default=60, cast=int)


# Logging

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {name} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'branchq': {
            'handlers': ['console'],
            'level': config('BRANCHQ_LOG_LEVEL', default='INFO'),
            'propagate': False,
        },
    },
}

REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'UNAUTHENTICATED_USER': None,
}
