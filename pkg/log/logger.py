from __future__ import annotations

import logging
import sys
from typing import TYPE_CHECKING

from . import LOGGER_LEVEL_RESULT

if TYPE_CHECKING:
    from config import Config

log_format = '%(asctime)s %(levelname)s %(message)s'
date_format = '%Y-%m-%d %H:%M:%S'

formatter = logging.Formatter(fmt=log_format,
                              datefmt=date_format)

LOGGER = logging.getLogger("nkSolver")


def logging_init(config: Config) -> None:
    """init for logging. Records go to stderr, stdout is left to solver output. If
    file logging is enabled the records are also written to the configured log file.

    Args:
        config (Config): config file
    """
    _addLoggingLevel('RESULT', LOGGER_LEVEL_RESULT)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(formatter)
    for old in [h for h in LOGGER.handlers if getattr(h, '_nk_handler', False)]:
        LOGGER.removeHandler(old)
        old.close()
    handler._nk_handler = True
    LOGGER.addHandler(handler)

    if config.logging_enable and config.get_logging_value('log_file'):
        from general.utils import ensure_folder_exist
        ensure_folder_exist(config.get_logging_value('log_file'))
        file_handler = logging.FileHandler(
            config.get_logging_value('log_file'),
            encoding='utf-8')
        file_handler.setFormatter(formatter)
        file_handler._nk_handler = True
        LOGGER.addHandler(file_handler)

    LOGGER.setLevel(config.get_logging_value('level'))
    LOGGER.propagate = True


# https://stackoverflow.com/questions/2183233/how-to-add-a-custom-loglevel-to-pythons-logging-facility/35804945#35804945


def _addLoggingLevel(levelName, levelNum, methodName=None):
    """
    Adds a new logging level to the `logging` module and the currently configured
    logging class.

    `levelName` becomes an attribute of the `logging` module with the value
    `levelNum`. `methodName` becomes a convenience method for both `logging`
    itself and the class returned by `logging.getLoggerClass()`. If `methodName`
    is not specified, `levelName.lower()` is used.

    Registering the same name with the same number again is a no-op; any other
    clash raises `AttributeError`.

    Example
    -------
    >>> _addLoggingLevel('TRACE', logging.DEBUG - 5)
    >>> logging.getLogger(__name__).setLevel("TRACE")
    >>> logging.TRACE
    5
    """
    if not methodName:
        methodName = levelName.lower()

    if getattr(logging, levelName, None) == levelNum and \
            hasattr(logging.getLoggerClass(), methodName):
        return

    if hasattr(logging, levelName):
        raise AttributeError(
            '{} already defined in logging module'.format(levelName))
    if hasattr(logging, methodName):
        raise AttributeError(
            '{} already defined in logging module'.format(methodName))
    if hasattr(logging.getLoggerClass(), methodName):
        raise AttributeError(
            '{} already defined in logger class'.format(methodName))

    def logForLevel(self, message, *args, **kwargs):
        if self.isEnabledFor(levelNum):
            self._log(levelNum, message, args, **kwargs)

    def logToRoot(message, *args, **kwargs):
        logging.log(levelNum, message, *args, **kwargs)

    logging.addLevelName(levelNum, levelName)
    setattr(logging, levelName, levelNum)
    setattr(logging.getLoggerClass(), methodName, logForLevel)
    setattr(logging, methodName, logToRoot)


def log_result(message: str) -> None:
    """Log a solver outcome at the RESULT level."""
    LOGGER.log(LOGGER_LEVEL_RESULT, message)
