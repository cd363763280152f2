"""Django app configuration for the baselines module."""

from django.apps import AppConfig


class BaselinesAppConfig(AppConfig):
    """App configuration for the baselines bounded context."""

    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.baselines"
    verbose_name = "Selection Baselines"
