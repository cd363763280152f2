"""Django app configuration for the incremental module."""

from django.apps import AppConfig


class IncrementalAppConfig(AppConfig):
    """App configuration for the incremental bounded context."""

    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.incremental"
    verbose_name = "Incremental Learning"
