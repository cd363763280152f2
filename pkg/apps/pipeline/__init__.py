"""
Pipeline bounded context module.

Run configuration, the run directory layout and the management commands that
drive generation, labeling, training, recommendation, drift checks,
incremental training, evaluation and the end-to-end bench.

Structure:
- domain/models: RunConfig and its sections, RunManifest
- domain/services: configuration loading, run layout and pipeline steps
- management/commands: one Django command per pipeline step
- cli.py: ``ce-advisor`` entry point mapping subcommands onto the commands
- apps.py: Django app configuration
"""
