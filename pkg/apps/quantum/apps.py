from django.apps import AppConfig


class QuantumConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.quantum'
    verbose_name = 'Entanglement-assisted quantum codes'
