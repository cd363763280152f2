"""Django app configuration for the dml module."""

from django.apps import AppConfig


class DmlAppConfig(AppConfig):
    """App configuration for the dml bounded context."""

    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.dml"
    verbose_name = "Metric Learning"
