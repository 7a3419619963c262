import sys

from log.logger import LOGGER
from toolkit.cli import cli_main


if __name__ == "__main__":
    try:
        code = cli_main(sys.argv[1:])
    except BaseException:
        LOGGER.exception("Error")
        raise
    sys.exit(code)
