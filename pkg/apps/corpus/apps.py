"""Django app configuration for the corpus module."""

from django.apps import AppConfig


class CorpusAppConfig(AppConfig):
    """App configuration for the corpus bounded context."""

    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.corpus"
    verbose_name = "Dataset Corpus"
