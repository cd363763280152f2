"""
Development settings for the ce-advisor project.
"""

from .base import *  # noqa: F403

DEBUG = True

# Smaller fan-out keeps laptops responsive while iterating
ADVISOR["JOBS"] = min(ADVISOR["JOBS"], 4)  # noqa: F405

# Per-epoch training traces and drift decisions in development
LOGGING["loggers"]["apps"]["level"] = "DEBUG"  # noqa: F405
LOGGING["loggers"]["apps"]["handlers"] = ["console"]  # noqa: F405
