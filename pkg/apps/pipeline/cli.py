"""
``ce-advisor`` entry point: ``ce-advisor <subcommand> [flags]``.

Subcommands are the pipeline management commands under their hyphenated
names. Exit codes: 0 on success, 1 on a runtime failure, 2 on a usage error.
"""

import os
import sys
from collections.abc import Sequence

SUBCOMMANDS = (
    "gen-data",
    "gen-workload",
    "label",
    "train",
    "cross-train",
    "recommend",
    "drift-check",
    "evaluate",
    "bench",
)

USAGE = (
    "usage: ce-advisor <subcommand> [flags]\n\n"
    "subcommands:\n"
    + "".join(f"  {name}\n" for name in SUBCOMMANDS)
    + "\nRun 'ce-advisor <subcommand> --help' for the flags of one subcommand.\n"
)


def main(argv: Sequence[str] | None = None) -> int:
    args = list(sys.argv[1:] if argv is None else argv)
    if args and args[0] in ("-h", "--help"):
        sys.stdout.write(USAGE)
        return 0
    if not args or args[0] not in SUBCOMMANDS:
        if args:
            sys.stderr.write(f"ce-advisor: unknown subcommand '{args[0]}'\n")
        sys.stderr.write(USAGE)
        return 2

    environment = os.getenv("DJANGO_ENVIRONMENT", "development")
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", f"core.settings.{environment}")
    import django
    from django.core.management import execute_from_command_line

    django.setup()
    try:
        execute_from_command_line(["ce-advisor", args[0].replace("-", "_"), *args[1:]])
    except SystemExit as e:
        if e.code is None or isinstance(e.code, int):
            return e.code or 0
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
