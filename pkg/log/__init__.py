import logging

LOGGER_LEVEL_RESULT = logging.INFO + 5
