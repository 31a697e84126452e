"""
Named experiments, their catalog and run reports.
"""
from .registry import Experiment, RunContext, experiment, experiment_schemas, get_experiment, list_experiments
from . import catalog  # noqa: F401  registers the built-in experiments
from .reports import (
    METADATA_FILE,
    SUMMARY_FILE,
    build_summary,
    experiment_report,
    write_experiment_report,
    write_metadata,
    write_summary,
)

__all__ = [
    'Experiment',
    'RunContext',
    'experiment',
    'experiment_schemas',
    'get_experiment',
    'list_experiments',
    'METADATA_FILE',
    'SUMMARY_FILE',
    'build_summary',
    'experiment_report',
    'write_experiment_report',
    'write_metadata',
    'write_summary',
]
