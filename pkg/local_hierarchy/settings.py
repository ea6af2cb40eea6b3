"""
Django settings for the local_hierarchy project.

The project has no web surface: Django provides the settings layer, the
management-command CLI and the test runner for the ``lph`` app.

For more information on this file, see
https://docs.djangoproject.com/en/2.0/topics/settings/
"""

import os
from decouple import config

# Build paths inside the project like this: os.path.join(BASE_DIR, ...)
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
PROJECT_ROOT = os.path.dirname(os.path.abspath(__file__))

# Only used by Django internals, nothing is signed by this project.
SECRET_KEY = config('SECRET_KEY', default='local-hierarchy-insecure-key')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    'lph.apps.LphConfig',
]

# Database
# No models are defined, sqlite keeps the test runner happy.

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': os.path.join(BASE_DIR, 'db.sqlite3'),
    }
}

# Internationalization

LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

# Logging

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name}: {message}',
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
        'lph': {
            'handlers': ['console'],
            'level': config('LPH_LOG_LEVEL', default='WARNING'),
            'propagate': False,
        },
    },
}

# Toolkit limits. Every value has a default so no environment is required.

# Second-order search
LPH_SO_STRATEGY = config('LPH_SO_STRATEGY', default='branching')
LPH_SO_MAX_ARITY = config('LPH_SO_MAX_ARITY', default=2, cast=int)
LPH_SO_UNARY_DOMAIN_CAP = config('LPH_SO_UNARY_DOMAIN_CAP', default=8, cast=int)
LPH_SO_BINARY_DOMAIN_CAP = config('LPH_SO_BINARY_DOMAIN_CAP', default=5, cast=int)
LPH_SO_SEARCH_BUDGET = config('LPH_SO_SEARCH_BUDGET', default=5000000, cast=int)

# Certificate games
LPH_GAME_BUDGET = config('LPH_GAME_BUDGET', default=2000000, cast=int)
LPH_GAME_CERT_CAP = config('LPH_GAME_CERT_CAP', default=3, cast=int)

# Distributed runtime
LPH_MAX_ROUNDS = config('LPH_MAX_ROUNDS', default=64, cast=int)
LPH_MAX_STEPS = config('LPH_MAX_STEPS', default=100000, cast=int)

# Sweeps
LPH_DEFAULT_SEED = config('LPH_DEFAULT_SEED', default=0, cast=int)
LPH_JOBS = config('LPH_JOBS', default=1, cast=int)
