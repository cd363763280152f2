"""Django app configuration for the workload module."""

from django.apps import AppConfig


class WorkloadAppConfig(AppConfig):
    """App configuration for the workload bounded context."""

    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.workload"
    verbose_name = "Query Workloads"
