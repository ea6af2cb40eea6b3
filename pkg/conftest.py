import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "local_hierarchy.settings")
django.setup()
