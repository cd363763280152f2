"""Django app configuration for the advisor module."""

from django.apps import AppConfig


class AdvisorAppConfig(AppConfig):
    """App configuration for the advisor bounded context."""

    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.advisor"
    verbose_name = "Model Advisor"
