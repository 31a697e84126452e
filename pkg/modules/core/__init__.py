"""
Core module containing shared errors, progress reporting and utilities.
The batch runner lives in modules.core.lab_runner.
"""

from .utilities import format_timestamp, atomic_write_json, atomic_write_csv, matrix_hash
from .progress_tracker import ProgressTracker
from .errors import (
    LabError,
    DomainError,
    ScopeError,
    PreconditionError,
    GridError,
    RegularValueError,
    FiniteEscapeError,
)

__all__ = [
    'format_timestamp',
    'atomic_write_json',
    'atomic_write_csv',
    'matrix_hash',
    'ProgressTracker',
    'LabError',
    'DomainError',
    'ScopeError',
    'PreconditionError',
    'GridError',
    'RegularValueError',
    'FiniteEscapeError',
]
