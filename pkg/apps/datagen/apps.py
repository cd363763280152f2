"""Django app configuration for the datagen module."""

from django.apps import AppConfig


class DatagenAppConfig(AppConfig):
    """App configuration for the datagen bounded context."""

    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.datagen"
    verbose_name = "Synthetic Data Generation"
