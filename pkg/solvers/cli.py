import os
import sys

from django.core.management import ManagementUtility

EXIT_OK = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def cli_main(argv=None) -> int:
    """Run `mvdsp <argv>` and return its exit code instead of exiting."""
    argv = sys.argv[1:] if argv is None else [str(arg) for arg in argv]
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "mvdsp_workbench.settings")
    try:
        ManagementUtility(["mvdsp", "mvdsp", *argv]).execute()
    except SystemExit as exc:
        if exc.code is None:
            return EXIT_OK
        return exc.code if isinstance(exc.code, int) else EXIT_NO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(cli_main())
