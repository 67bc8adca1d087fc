from django.apps import AppConfig


class CodesConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.codes'
    verbose_name = 'Gabidulin codes & Galois hulls'

    def ready(self):
        # Import signals to ensure they are registered
        import apps.codes.signals
