"""
Django settings package.

This package contains environment-specific settings modules:
- base.py: Common settings shared across all environments
- development.py: Local runs with debug-level pipeline logging
- testing.py: Deterministic, console-only settings for pytest
- production.py: Batch hosts, log file taken from the environment

Entry points (manage.py and the ce-advisor console script) pick the module
from the DJANGO_ENVIRONMENT variable.
"""
