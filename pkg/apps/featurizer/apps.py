"""Django app configuration for the featurizer module."""

from django.apps import AppConfig


class FeaturizerAppConfig(AppConfig):
    """App configuration for the featurizer bounded context."""

    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.featurizer"
    verbose_name = "Feature Graphs"
