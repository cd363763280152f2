"""
Production settings for the ce-advisor project (batch hosts and CI runners).
"""

import os

from .base import *  # noqa: F403

DEBUG = False

# Use environment variable for log file path, fallback to console-only in containers
LOG_FILE_PATH = os.getenv("CE_ADVISOR_LOG_FILE_PATH")
if LOG_FILE_PATH:
    LOGGING["handlers"]["file"]["filename"] = LOG_FILE_PATH  # noqa: F405
else:
    LOGGING["handlers"].pop("file", None)  # noqa: F405
    LOGGING["root"]["handlers"] = ["console"]  # noqa: F405
    LOGGING["loggers"]["django"]["handlers"] = ["console"]  # noqa: F405
    LOGGING["loggers"]["apps"]["handlers"] = ["console"]  # noqa: F405

LOGGING["root"]["level"] = "WARNING"  # noqa: F405
LOGGING["loggers"]["django"]["level"] = "WARNING"  # noqa: F405
LOGGING["loggers"]["apps"]["level"] = "INFO"  # noqa: F405
