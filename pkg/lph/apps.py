
from django.apps import AppConfig


class LphConfig(AppConfig):
    """
    The application registry entry for the local-polynomial hierarchy
    toolkit. The app has no models; it contributes the library modules,
    the management commands and the test suite.
    """
    name = 'lph'
    verbose_name = 'Local hierarchy toolkit'
