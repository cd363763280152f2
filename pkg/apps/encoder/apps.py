"""Django app configuration for the encoder module."""

from django.apps import AppConfig


class EncoderAppConfig(AppConfig):
    """App configuration for the encoder bounded context."""

    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.encoder"
    verbose_name = "GIN Encoder"
