from __future__ import annotations
from copy import deepcopy
import json
from typing import Any
import tomli
import logging

from enum import Enum
from dataclasses import astuple, dataclass

from log import LOGGER_LEVEL_RESULT

WARNING = logging.WARNING
ERROR = logging.ERROR


class ConfigError(Exception):
    pass


class ErrorMessage(Enum):
    INVALID_FILE = "Invalid config value"
    INVALID_VALUE = "Invalid value for %s"
    INVALID_VALUE_CUSTOM = "Invalid value for %s. %s"


class ConfigCategory(Enum):
    LOGGING = "logging"
    SOLVER = "solver"
    COLORCODE = "colorcode"
    APPROX = "approx"
    BENCH = "bench"

    @property
    def name(self):
        return self.value


class ConfigKey(Enum):
    """Config key enum.

    value (category, key, type) : category, config key and expected type
    category (str) : category name
    category_raw (ConfigCategory) : category enum
    key (str) : key name
    """
    LOGGING_ENABLE = ConfigCategory.LOGGING, "enable", bool
    LOGGING_LEVEL = ConfigCategory.LOGGING, "level", str
    LOGGING_LOG_FILE = ConfigCategory.LOGGING, "log_file", str

    SOLVER_BRUTE_FORCE_GUARD = ConfigCategory.SOLVER, "brute_force_guard", int
    SOLVER_AUTO_BRUTE_MAX_N = ConfigCategory.SOLVER, "auto_brute_max_n", int
    SOLVER_AUTO_TWDP_MAX_WIDTH = ConfigCategory.SOLVER, "auto_twdp_max_width", int
    SOLVER_TWDP_STRATEGY = ConfigCategory.SOLVER, "twdp_strategy", str

    COLORCODE_EXHAUSTIVE_BUDGET = ConfigCategory.COLORCODE, "exhaustive_budget", int
    COLORCODE_MAX_TRIALS = ConfigCategory.COLORCODE, "max_trials", int
    COLORCODE_SEED = ConfigCategory.COLORCODE, "seed", int
    COLORCODE_FAMILY_PRIMES = ConfigCategory.COLORCODE, "family_primes", int

    APPROX_CERTIFY_MAX_N = ConfigCategory.APPROX, "certify_max_n", int

    BENCH_PROGRESS = ConfigCategory.BENCH, "progress", bool

    @property
    def category_raw(self):
        return self.value[0]

    @property
    def category(self):
        return self.value[0].value

    @property
    def key(self):
        return self.value[1]

    @property
    def type(self):
        return self.value[2]

    def __str__(self):
        return f'{self.category}.{self.key}'


@dataclass
class ConfigErrorMessage:
    level: int
    msg: str

    def __iter__(self):
        return iter(astuple(self))


LOGGING_LEVEL = {
    'DEBUG': logging.DEBUG,
    'INFO': logging.INFO,
    'RESULT': LOGGER_LEVEL_RESULT,
    'WARNING': logging.WARNING,
    'ERROR': logging.ERROR,
}

TWDP_STRATEGIES = ('guessed', 'rooted')

DEFAULT_CONFIG = {
    'logging': {
        'enable': False,
        'level': logging.INFO,
        'log_file': 'logs/nksolver.log'
    },
    'solver': {
        'brute_force_guard': 25,
        'auto_brute_max_n': 18,
        'auto_twdp_max_width': 12,
        'twdp_strategy': 'rooted'
    },
    'colorcode': {
        'exhaustive_budget': 100000,
        'max_trials': 1000000,
        'seed': 0,
        'family_primes': 3
    },
    'approx': {
        'certify_max_n': 12
    },
    'bench': {
        'progress': False
    }
}

# keys whose value must be a positive integer
_POSITIVE_KEYS = (
    ConfigKey.SOLVER_BRUTE_FORCE_GUARD,
    ConfigKey.COLORCODE_EXHAUSTIVE_BUDGET,
    ConfigKey.COLORCODE_MAX_TRIALS,
    ConfigKey.COLORCODE_FAMILY_PRIMES,
)


class Config:
    """Solver settings read from a toml file. Missing or invalid values fall back to
    `DEFAULT_CONFIG`; the problems found are kept until `display_error_messages()`.
    """

    def __init__(self, config_file: str | None = "config.toml") -> None:
        self.config_file = config_file
        self._error_msg = []
        if config_file is None:
            self._config = deepcopy(DEFAULT_CONFIG)
            return
        source = self._get_config()
        self._config_validation(source)

    @classmethod
    def default(cls) -> Config:
        return cls(None)

    def display_error_messages(self) -> None:
        """
        During config, the logger has not been set up properly. Therefor messages are not
        displayed. This function should call after logger is set up by calling logging_init().
        """
        if len(self._error_msg) == 0:
            return

        for level, msg in self._error_msg:
            match level:
                case logging.ERROR:
                    logging.error(msg)
                case logging.WARNING:
                    logging.warning(msg)
                case logging.DEBUG:
                    logging.debug(msg)

    def get_value(self, key: ConfigKey | ConfigCategory | str):
        """ Get the config value for the key. If key does not exist,
        None will return

        Examples:
        >>> Config(None).get_value(ConfigKey.SOLVER_BRUTE_FORCE_GUARD)
        25
        >>> Config(None).get_value(ConfigCategory.APPROX)
        {'certify_max_n': 12}
        """
        if isinstance(key, ConfigCategory):
            return self._config.get(key.value, None)
        elif isinstance(key, ConfigKey):
            return self._config.get(key.category, {}).get(key.key, None)
        elif isinstance(key, str):
            return self._config.get(key, None)

        raise TypeError("Invalid key type")

    def get_logging_value(self, key: str) -> Any:
        """Get the config value for the logging key. If key does not exist,
        None will return

        Args:
            key (str): config key for logging

        Returns:
            Any: value for the key. None if key is not found
        """
        return self._config['logging'].get(key, None)

    def _get_config(self,) -> dict:
        """Read the toml config file

        Raises:
        FileNotFoundError: config file not found
        ConfigError: the file is not valid toml

        Returns:
            dict: config file in python dictionary
        """
        with open(self.config_file, "rb") as file:
            try:
                return tomli.load(file)
            except tomli.TOMLDecodeError as e:
                raise ConfigError(f"{ErrorMessage.INVALID_FILE.value}: {e}") from e

    def _validate_key(self, source: dict, key: ConfigKey, required: bool = False) -> bool:
        """Copy a single key from `source` when present with the right type.

        A present key with a wrong type always produces a warning; a missing key only
        when it is required.

        Returns:
            bool: True if the value was taken from source
        """
        section = source.get(key.category, {})
        if key.key not in section:
            if required:
                self._error_msg.append(ConfigErrorMessage(WARNING, f"{key} is not found in config file"))
            return False

        value = section[key.key]
        # bool is an int subclass, keep them apart
        if not isinstance(value, key.type) or (key.type is int and isinstance(value, bool)):
            self._error_msg.append(ConfigErrorMessage(WARNING, ErrorMessage.INVALID_VALUE.value % (key,)))
            return False
        self._config[key.category][key.key] = value
        return True

    def _config_validation(self, source: dict):
        """Validate the config dictionary. Invalid entries are replaced by their
        defaults and reported through `display_error_messages()`.

        Args:
            source (dict): config dict read from config file

        Raises:
            ConfigError: source is not a table
        """
        if not isinstance(source, dict):
            raise ConfigError(ErrorMessage.INVALID_FILE.value)

        self._config = deepcopy(DEFAULT_CONFIG)

        for category in ConfigCategory:
            if category.value in source and not isinstance(source[category.value], dict):
                self._error_msg.append(ConfigErrorMessage(
                    WARNING, ErrorMessage.INVALID_VALUE.value % (category.value,)))
                source = {k: v for k, v in source.items() if k != category.value}

        for name in source:
            if name not in DEFAULT_CONFIG:
                self._error_msg.append(ConfigErrorMessage(
                    WARNING, ErrorMessage.INVALID_VALUE_CUSTOM.value % (name, "Unknown section ignored")))

        for key in ConfigKey:
            if key == ConfigKey.LOGGING_LEVEL:
                continue
            self._validate_key(source, key)

        level = source.get('logging', {}).get('level', None)
        if level is not None:
            if not isinstance(level, str) or level.upper() not in LOGGING_LEVEL:
                self._error_msg.append(ConfigErrorMessage(
                    WARNING, ErrorMessage.INVALID_VALUE.value % (ConfigKey.LOGGING_LEVEL,)))
            else:
                self._config['logging']['level'] = LOGGING_LEVEL[level.upper()]

        if self._config['solver']['twdp_strategy'] not in TWDP_STRATEGIES:
            self._error_msg.append(ConfigErrorMessage(
                WARNING, ErrorMessage.INVALID_VALUE_CUSTOM.value % (
                    ConfigKey.SOLVER_TWDP_STRATEGY, f"Must be one of {', '.join(TWDP_STRATEGIES)}")))
            self._config['solver']['twdp_strategy'] = DEFAULT_CONFIG['solver']['twdp_strategy']

        for key in _POSITIVE_KEYS:
            if self.get_value(key) < 1:
                self._error_msg.append(ConfigErrorMessage(
                    WARNING, ErrorMessage.INVALID_VALUE_CUSTOM.value % (key, "Must be positive")))
                self._config[key.category][key.key] = DEFAULT_CONFIG[key.category][key.key]

    @property
    def logging_enable(self) -> bool:
        return self._config['logging']['enable']

    @property
    def brute_force_guard(self) -> int:
        return self._config['solver']['brute_force_guard']

    @property
    def twdp_strategy(self) -> str:
        return self._config['solver']['twdp_strategy']

    def to_json(self, indent: int | None = None) -> str:
        """to_json for jsonpickle

        Args:
            indent (int, optional): indentation for the json string. Defaults to None.

        Returns:
            str: Config in json format. Contain all the config
        """
        return json.dumps(self._config, indent=indent)

    def __getstate__(self) -> dict:
        """State for jsonpickle

        Returns:
            dict: the validated config
        """
        return self._config

    def __str__(self) -> str:
        return f"config file: {self.config_file}\nconfig: {self._config}"

    def __repr__(self) -> str:
        return f"config file: {self.config_file}\nconfig: {self._config}"
