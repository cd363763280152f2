"""Django app configuration for the pipeline module."""

from django.apps import AppConfig


class PipelineAppConfig(AppConfig):
    """App configuration for the pipeline bounded context."""

    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.pipeline"
    verbose_name = "Pipeline Commands"
