import logging
import sys

from uqpkit.cli import cli_dispatch
from uqpkit.config import get_settings


def main() -> int:
    logging.basicConfig(level=logging.INFO, format=get_settings().log_format)
    return cli_dispatch(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
