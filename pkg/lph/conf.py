#!/usr/bin/env python
"""
Typed access to the toolkit limits declared in settings.py.

Library functions take explicit arguments first and fall back to these
values, so they can also be called with settings left unconfigured.
"""
from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

DEFAULTS = {
    'LPH_SO_STRATEGY': 'branching',
    'LPH_SO_MAX_ARITY': 2,
    'LPH_SO_UNARY_DOMAIN_CAP': 8,
    'LPH_SO_BINARY_DOMAIN_CAP': 5,
    'LPH_SO_SEARCH_BUDGET': 5000000,
    'LPH_GAME_BUDGET': 2000000,
    'LPH_GAME_CERT_CAP': 3,
    'LPH_MAX_ROUNDS': 64,
    'LPH_MAX_STEPS': 100000,
    'LPH_DEFAULT_SEED': 0,
    'LPH_JOBS': 1,
}


def get(name):
    """Return the configured value of `name`, or its default."""
    try:
        return getattr(settings, name, DEFAULTS[name])
    except ImproperlyConfigured:
        # settings module not configured (plain library use)
        return DEFAULTS[name]
