"""Django app configuration for the estimators module."""

from django.apps import AppConfig


class EstimatorsAppConfig(AppConfig):
    """App configuration for the estimators bounded context."""

    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.estimators"
    verbose_name = "Cardinality Estimators"
