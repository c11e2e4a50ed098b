"""
The main entry point for the application.
"""

import sys

from .cli import AtgmApp
from .utils.logging import configure_logging
from .utils.parser import get_parser


def main() -> None:
    """
    Run the main function.
    """
    args = get_parser().parse_args()
    configure_logging(sys.stderr, args.log, sys.stderr.isatty())
    sys.exit(AtgmApp().run(args))


if __name__ == "__main__":
    main()
