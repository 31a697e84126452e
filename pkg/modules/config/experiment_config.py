"""
Experiment Configuration

Loads and validates TOML run configurations. A config has the tables
[run], [logging], [settings] and an array of [[experiment]] tables. Unknown
keys are rejected with the dotted path of the offending key.
"""

import logging
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .defaults import SETTINGS, RUN_DEFAULTS, LOGGING_DEFAULTS


class ConfigurationError(Exception):
    """Base exception for configuration errors"""
    pass


class ValidationError(ConfigurationError):
    """Raised when a config key is unknown or has an invalid value"""

    def __init__(self, key, message):
        super().__init__(f"{key}: {message}")
        self.key = key


@dataclass
class ExperimentSpec:
    """One [[experiment]] entry after validation"""
    name: str
    id: str
    index: int
    params: Dict[str, Any] = field(default_factory=dict)


@dataclass
class RunConfig:
    """Validated run configuration"""
    seed: int = 0
    out: str = 'results'
    jobs: int = 1
    log_level: str = 'INFO'
    log_file: str = '~/pyspeclab.log'
    settings: Dict[str, Any] = field(default_factory=dict)
    experiments: List[ExperimentSpec] = field(default_factory=list)
    source: Optional[str] = None


logger = logging.getLogger(__name__)

_TOP_LEVEL = ('run', 'logging', 'settings', 'experiment')
_LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


def coerce_value(key: str, value: Any, data_type: str) -> Any:
    """Convert a raw config value to its declared data type"""
    try:
        if data_type == 'bool':
            if isinstance(value, bool):
                return value
            if isinstance(value, str) and value.lower() in ('true', 'false'):
                return value.lower() == 'true'
            raise TypeError(f"expected bool, got {value!r}")
        elif data_type == 'int':
            if isinstance(value, bool) or not isinstance(value, (int, str)):
                raise TypeError(f"expected int, got {value!r}")
            return int(value)
        elif data_type == 'float':
            if isinstance(value, bool):
                raise TypeError(f"expected float, got {value!r}")
            return float(value)
        elif data_type == 'list':
            if not isinstance(value, (list, tuple)):
                raise TypeError(f"expected list, got {value!r}")
            return list(value)
        elif data_type == 'str':
            if not isinstance(value, str):
                raise TypeError(f"expected string, got {value!r}")
            return value
        else:
            raise TypeError(f"unknown data type {data_type}")
    except (TypeError, ValueError) as e:
        raise ValidationError(key, str(e))


def _validate_table(prefix: str, table: Any, schema: Dict[str, tuple]) -> Dict[str, Any]:
    """Validate a flat table against {key: (default, data_type)}"""
    if not isinstance(table, dict):
        raise ValidationError(prefix, "expected a table")
    result = {name: default for name, (default, _) in schema.items()}
    for key, value in table.items():
        dotted = f"{prefix}.{key}"
        if key not in schema:
            raise ValidationError(dotted, "unknown key")
        result[key] = coerce_value(dotted, value, schema[key][1])
    return result


def parse_config(data: Dict[str, Any], schemas: Optional[Dict[str, Dict[str, tuple]]] = None,
                 source: Optional[str] = None) -> RunConfig:
    """
    Validate a decoded TOML document.

    Args:
        data: mapping produced by tomllib
        schemas: experiment name -> {param: (default, data_type)}; when given,
            experiment names and parameters are checked against it
        source: path the document came from, recorded for reports

    Returns:
        RunConfig
    """
    for key in data:
        if key not in _TOP_LEVEL:
            raise ValidationError(key, "unknown key")

    run = _validate_table('run', data.get('run', {}), RUN_DEFAULTS)
    if run['jobs'] < 1:
        raise ValidationError('run.jobs', "must be at least 1")
    if run['seed'] < 0:
        raise ValidationError('run.seed', "must be non-negative")

    log_table = _validate_table('logging', data.get('logging', {}), LOGGING_DEFAULTS)
    if log_table['level'].upper() not in _LOG_LEVELS:
        raise ValidationError('logging.level', f"must be one of {', '.join(_LOG_LEVELS)}")

    settings = _validate_table('settings', data.get('settings', {}), SETTINGS)

    raw_experiments = data.get('experiment', [])
    if not isinstance(raw_experiments, list):
        raise ValidationError('experiment', "expected an array of tables")

    experiments = []
    seen_ids = set()
    for index, entry in enumerate(raw_experiments):
        prefix = f"experiment[{index}]"
        if not isinstance(entry, dict):
            raise ValidationError(prefix, "expected a table")
        if 'name' not in entry:
            raise ValidationError(f"{prefix}.name", "missing experiment name")
        name = coerce_value(f"{prefix}.name", entry['name'], 'str')
        exp_id = coerce_value(f"{prefix}.id", entry.get('id', name), 'str')
        if exp_id in seen_ids:
            exp_id = f"{exp_id}-{index}"
        seen_ids.add(exp_id)

        params = {k: v for k, v in entry.items() if k not in ('name', 'id')}
        if schemas is not None:
            if name not in schemas:
                raise ValidationError(f"{prefix}.name", f"unknown experiment '{name}'")
            params = _validate_table(prefix, params, schemas[name])
        experiments.append(ExperimentSpec(name=name, id=exp_id, index=index, params=params))

    return RunConfig(
        seed=run['seed'],
        out=run['out'],
        jobs=run['jobs'],
        log_level=log_table['level'].upper(),
        log_file=log_table['file'],
        settings=settings,
        experiments=experiments,
        source=source,
    )


def load_config(path: str, schemas: Optional[Dict[str, Dict[str, tuple]]] = None) -> RunConfig:
    """Read and validate a TOML run config"""
    if not os.path.exists(path):
        raise ConfigurationError(f"Config file not found: {path}")
    try:
        with open(path, 'rb') as handle:
            data = tomllib.load(handle)
    except tomllib.TOMLDecodeError as e:
        logger.error(f"Failed to parse config {path}: {e}")
        raise ConfigurationError(f"Could not parse config: {e}")
    config = parse_config(data, schemas=schemas, source=os.path.abspath(path))
    logger.info(f"Loaded config {path} with {len(config.experiments)} experiment(s)")
    return config
