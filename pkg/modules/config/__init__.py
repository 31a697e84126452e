"""
Configuration and constants for pySpecLab.
"""

from .defaults import SETTINGS, RUN_DEFAULTS, LOGGING_DEFAULTS, apply_settings, setting
from .experiment_config import (
    ConfigurationError,
    ValidationError,
    RunConfig,
    ExperimentSpec,
    load_config,
    parse_config,
    coerce_value,
)

__all__ = [
    'SETTINGS',
    'RUN_DEFAULTS',
    'LOGGING_DEFAULTS',
    'setting',
    'apply_settings',
    'ConfigurationError',
    'ValidationError',
    'RunConfig',
    'ExperimentSpec',
    'load_config',
    'parse_config',
    'coerce_value',
]
